#include "chebex/testfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "chebex/errors.hpp"

namespace chebex {

namespace {

// Max of |sin(x + phase)| over [lo, hi]: 1 if the interval contains a peak,
// otherwise the larger endpoint value.
double sup_abs_shifted_sin(double phase, double lo, double hi) {
    const double pi = std::numbers::pi;
    // peaks of |sin| at x + phase = pi/2 + k pi
    const double first_peak =
        pi / 2.0 - phase + pi * std::ceil((lo + phase - pi / 2.0) / pi);
    if (first_peak <= hi)
        return 1.0;
    return std::max(std::abs(std::sin(lo + phase)),
                    std::abs(std::sin(hi + phase)));
}

double grid_sup(const std::function<double(double)>& f, double lo, double hi,
                int grid = 4001) {
    double best = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double v = lo + (hi - lo) * i / (grid - 1);
        best = std::max(best, std::abs(f(v)));
    }
    return best;
}

} // namespace

TestFunction make_exp() {
    TestFunction f;
    f.id = "exp";
    f.value = [](double v) { return std::exp(v); };
    f.derivative = [](int, double v) { return std::exp(v); };
    f.sup_abs_derivative = [](int, double, double hi) { return std::exp(hi); };
    f.derivative_ext = [](int, long double v) { return expl(v); };
    return f;
}

TestFunction make_sin() {
    TestFunction f;
    f.id = "sin";
    f.value = [](double v) { return std::sin(v); };
    f.derivative = [](int j, double v) {
        return std::sin(v + j * std::numbers::pi / 2.0);
    };
    f.sup_abs_derivative = [](int j, double lo, double hi) {
        return sup_abs_shifted_sin(j * std::numbers::pi / 2.0, lo, hi);
    };
    f.derivative_ext = [](int j, long double v) {
        return sinl(v + j * std::numbers::pi_v<long double> / 2.0L);
    };
    return f;
}

TestFunction make_polynomial(std::vector<double> coeffs) {
    if (coeffs.empty())
        throw invalid_domain_error("make_polynomial: empty coefficient list");
    auto deriv_coeffs = [](std::vector<double> c, int j) {
        for (int t = 0; t < j && !c.empty(); ++t) {
            for (std::size_t i = 1; i < c.size(); ++i)
                c[i - 1] = c[i] * static_cast<double>(i);
            c.pop_back();
        }
        return c;
    };
    auto eval = [](const std::vector<double>& c, double v) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;)
            acc = acc * v + c[i];
        return acc;
    };
    TestFunction f;
    std::ostringstream id;
    id << "poly:";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        id << (i ? "," : "") << coeffs[i];
    f.id = id.str();
    f.value = [coeffs, eval](double v) { return eval(coeffs, v); };
    f.derivative = [coeffs, eval, deriv_coeffs](int j, double v) {
        return eval(deriv_coeffs(coeffs, j), v);
    };
    // Grid-based sup; exact enough for the tolerances used with polynomials.
    f.sup_abs_derivative = [coeffs, eval, deriv_coeffs](int j, double lo,
                                                        double hi) {
        const auto c = deriv_coeffs(coeffs, j);
        return grid_sup([&](double v) { return eval(c, v); }, lo, hi);
    };
    f.derivative_ext = [coeffs, deriv_coeffs](int j, long double v) {
        const auto c = deriv_coeffs(coeffs, j);
        long double acc = 0.0L;
        for (std::size_t i = c.size(); i-- > 0;)
            acc = acc * v + static_cast<long double>(c[i]);
        return acc;
    };
    return f;
}

TestFunction make_runge() {
    // 1/(1+25 v^2) = Re 1/(1 - 5iv); the j-th derivative follows from the
    // complex partial fraction.
    auto deriv = [](int j, double v) {
        const std::complex<double> pole(1.0, -5.0 * v);
        std::complex<double> term = std::pow(std::complex<double>(0.0, 5.0), j);
        for (int t = 2; t <= j; ++t)
            term *= t;
        return (term / std::pow(pole, j + 1)).real();
    };
    TestFunction f;
    f.id = "runge";
    f.value = [](double v) { return 1.0 / (1.0 + 25.0 * v * v); };
    f.derivative = deriv;
    f.sup_abs_derivative = [deriv](int j, double lo, double hi) {
        return grid_sup([&](double v) { return deriv(j, v); }, lo, hi);
    };
    f.derivative_ext = [](int j, long double v) {
        const std::complex<long double> pole(1.0L, -5.0L * v);
        std::complex<long double> term =
            std::pow(std::complex<long double>(0.0L, 5.0L), j);
        for (int t = 2; t <= j; ++t)
            term *= t;
        return (term / std::pow(pole, j + 1)).real();
    };
    return f;
}

TestFunction test_function_by_id(const std::string& id) {
    if (id == "exp")
        return make_exp();
    if (id == "sin")
        return make_sin();
    if (id == "runge")
        return make_runge();
    if (id.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::istringstream in(id.substr(5));
        std::string token;
        while (std::getline(in, token, ','))
            coeffs.push_back(std::stod(token));
        return make_polynomial(std::move(coeffs));
    }
    throw config_error("unknown test function id: " + id);
}

} // namespace chebex
