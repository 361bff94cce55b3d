#include "chebex/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chebex/polybasis.hpp"

namespace chebex {

void NoiseModel::validate() const {
    if (sigma < 0.0)
        throw invalid_domain_error("NoiseModel: sigma must be >= 0");
    if (var_z <= 0.0)
        throw invalid_domain_error("NoiseModel: var_z must be > 0");
    if (kind == Kind::bounded) {
        if (!(tau_lo < tau_hi))
            throw invalid_domain_error("NoiseModel: need tau_lo < tau_hi");
        if (!std::isfinite(tau_lo) || !std::isfinite(tau_hi))
            throw invalid_domain_error("NoiseModel: bounded support must be finite");
    }
}

double NoiseModel::range() const {
    return std::max(std::abs(tau_lo), std::abs(tau_hi));
}

double NoiseModel::width() const { return tau_hi - tau_lo; }

void ErrorBudget::validate() const {
    if (rho_m <= 0.0 || rho_l <= 0.0 || rho <= 0.0)
        throw invalid_domain_error("ErrorBudget: radii must be > 0");
    if (rho_n < 0.0)
        throw invalid_domain_error("ErrorBudget: rho_n must be >= 0");
    if (!(eta > 0.0 && eta < 1.0))
        throw invalid_domain_error("ErrorBudget: eta must lie in (0,1)");
    if (!(omega > 0.0 && omega < 1.0))
        throw invalid_domain_error("ErrorBudget: omega must lie in (0,1)");
    if (alpha < 1)
        throw invalid_domain_error("ErrorBudget: alpha must be >= 1");
}

double m_taylor(double R, int d, int m, double s_star, double target, double a,
                double b) {
    if (m < 1)
        throw invalid_domain_error("m_taylor: m must be >= 1");
    if (a >= b)
        throw invalid_domain_error("m_taylor: degenerate interval");
    const double width = b - a;
    // (d+m)!/m! as the rising product (m+1)...(m+d)
    double rising = 1.0;
    for (int t = 1; t <= d; ++t)
        rising *= m + t;
    const double dist = std::abs(s_star - target);
    return R * rising * std::pow(dist / width, m) * std::pow(width, -d);
}

double k_factor(int l, int alpha) {
    if (l < 0)
        throw invalid_domain_error("k_factor: l must be >= 0");
    if (alpha < 1)
        throw invalid_domain_error("k_factor: alpha must be >= 1");
    return (9.0 + 4.0 / std::numbers::pi * std::log(1.0 + l)) *
           std::pow(std::numbers::pi / (2.0 * (1 + l)), alpha);
}

double m_interp(double R, int d, int m, int l, int alpha, double s_lo,
                double s_hi, double s_star, double target) {
    if (m < 1)
        throw invalid_domain_error("m_interp: m must be >= 1");
    if (s_lo >= s_hi)
        throw invalid_domain_error("m_interp: degenerate window");
    const double width = s_hi - s_lo;
    const double ratio = std::abs(s_star - target) / width;
    double sum = 0.0;
    double geo = 1.0; // ratio^i
    for (int i = 0; i < m; ++i) {
        // (d+i+alpha)!/i! as the rising product (i+1)...(i+d+alpha)
        double rising = 1.0;
        for (int t = 1; t <= d + alpha; ++t)
            rising *= i + t;
        sum += geo * rising;
        geo *= ratio;
    }
    // Overflow of the rising product yields +inf: a valid but useless bound.
    return k_factor(l, alpha) * R / std::pow(width, d + alpha) * sum;
}

double lambda_factor(std::span<const double> knots, int m, int d, double s_star,
                     double target) {
    if (m < 1)
        throw invalid_domain_error("lambda_factor: m must be >= 1");
    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    const int top_order = d + m - 1;
    const double dist = std::abs(s_star - target);
    double sum = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
        const Jet jet = basis.jet(k, s_star, top_order);
        double pow_term = 1.0; // dist^i / i!
        for (int i = 0; i < m; ++i) {
            sum += pow_term * std::abs(jet.derivative(d + i));
            pow_term *= dist / (i + 1);
        }
    }
    return sum;
}

namespace {

BoundReport assemble(const DesignSpace& space, const Design& design,
                     const NoiseModel& noise, int m, int alpha, double m_est) {
    if (noise.kind == NoiseModel::Kind::unbounded)
        throw config_error(
            "total_bound: Prop-1 bound requires bounded noise (finite R)");
    space.validate();
    noise.validate();
    BoundReport report;
    report.m_taylor = m_taylor(noise.range(), space.d, m, space.s_star,
                               space.target, space.a, space.b);
    report.k_factor = k_factor(design.degree(), alpha);
    report.m_interp = m_interp(noise.range(), space.d, m, design.degree(),
                               alpha, space.s_lo, space.s_hi, space.s_star,
                               space.target);
    report.lambda =
        lambda_factor(design.knots, m, space.d, space.s_star, space.target);
    report.m_est = m_est;
    report.total = report.m_taylor + report.m_interp + report.m_est;
    return report;
}

} // namespace

BoundReport total_bound(const DesignSpace& space, const Design& design,
                        const NoiseModel& noise, int m, int alpha,
                        double rho_n) {
    if (rho_n < 0.0)
        throw invalid_domain_error("total_bound: rho_n must be >= 0");
    return assemble(space, design, noise, m, alpha, rho_n);
}

BoundReport total_bound_posteriori(const DesignSpace& space,
                                   const Design& design,
                                   const NoiseModel& noise, int m, int alpha,
                                   std::span<const double> residuals) {
    if (residuals.size() != design.knots.size())
        throw invalid_domain_error(
            "total_bound_posteriori: one residual per knot required");
    double max_abs = 0.0;
    for (double r : residuals)
        max_abs = std::max(max_abs, std::abs(r));
    BoundReport report = assemble(space, design, noise, m, alpha, 0.0);
    report.m_est = report.lambda * max_abs;
    report.total = report.m_taylor + report.m_interp + report.m_est;
    return report;
}

double approximation_bound(
    int alpha, int l, int m, int d, const DesignSpace& space,
    const std::function<double(int, double, double)>& sup_abs_deriv) {
    if (!sup_abs_deriv)
        throw config_error("approximation_bound: sup-bound oracle missing");
    if (alpha < 1 || m < 1 || l < 0 || d < 0)
        throw invalid_domain_error("approximation_bound: bad orders");
    space.validate();
    const double window = space.s_hi - space.s_lo;
    // Section-2 variant of K carries the window width.
    const double k_sec2 =
        std::pow(std::numbers::pi / (2.0 * (1 + l)) * window, alpha) *
        (9.0 + 4.0 / std::numbers::pi * std::log(1.0 + l));
    // sup over U = (a, s_lo) u (s_hi, b) of |v - s_star|
    const double sup_u_dist =
        std::max(space.s_star - space.a, space.b - space.s_star);
    double a_term = 0.0;
    double pow_term = 1.0; // sup_u_dist^i / i!
    for (int i = 0; i < m; ++i) {
        a_term += sup_abs_deriv(d + i + alpha, space.s_lo, space.s_hi) * pow_term;
        pow_term *= sup_u_dist / (i + 1);
    }
    a_term *= k_sec2;

    double dist_m = 1.0; // |target - s_star|^m / m!
    for (int i = 1; i <= m; ++i)
        dist_m *= std::abs(space.target - space.s_star) / i;
    const double b_term = sup_abs_deriv(d + alpha, space.a, space.s_hi) * dist_m;
    return a_term + b_term;
}

namespace {

std::int64_t checked_int(double v, const char* what) {
    if (!std::isfinite(v) || v > 4.0e18)
        throw numeric_error(std::string(what) + ": sample size overflows");
    return static_cast<std::int64_t>(v);
}

} // namespace

SampleSize hoeffding_sample_size(int l, double lambda, double tau_lo,
                                 double tau_hi, double rho, double eta) {
    if (l < 0)
        throw invalid_domain_error("hoeffding_sample_size: l must be >= 0");
    if (!(tau_lo < tau_hi))
        throw invalid_domain_error("hoeffding_sample_size: need tau_lo < tau_hi");
    if (rho <= 0.0 || lambda <= 0.0)
        throw invalid_domain_error(
            "hoeffding_sample_size: rho and lambda must be > 0");
    if (!(eta > 0.0 && eta < 1.0))
        throw invalid_domain_error("hoeffding_sample_size: eta must be in (0,1)");
    const double ratio = lambda * (tau_hi - tau_lo) / rho;
    const double star =
        ((l + 1) * std::numbers::ln2 - std::log(eta)) / 2.0 * ratio * ratio;
    // Union-bound alternate under equal per-knot split.
    const double uni = (l + 1) * ratio * ratio / 2.0 *
                       std::log(2.0 * (l + 1) / eta);
    SampleSize out;
    out.n_star = checked_int(std::floor(star), "hoeffding n*");
    out.n_union = checked_int(std::ceil(uni), "hoeffding n_union");
    return out;
}

BudgetSolution solve_budget(const ErrorBudget& budget, const DesignSpace& space,
                            const NoiseModel& noise, int l_max) {
    budget.validate();
    space.validate();
    noise.validate();
    if (noise.kind == NoiseModel::Kind::unbounded)
        throw config_error("solve_budget: requires bounded noise (finite R)");
    const double R = noise.range();
    const double dist = std::abs(space.s_star - space.target);
    const double width = space.b - space.a;
    if (dist >= width)
        throw infeasible_error(
            "solve_budget: |s_star - target| >= b - a, no finite m reaches rho_m");
    if (dist == 0.0)
        throw invalid_domain_error("solve_budget: target coincides with s_star");

    constexpr int kMMax = 400;
    BudgetSolution sol;
    if (space.d == 0) {
        // Explicit inversion of M_Taylor = R (dist/width)^m.
        const double exact = (std::log(budget.rho_m) - std::log(R)) /
                             (std::log(dist) - std::log(width));
        int m = std::max(1, static_cast<int>(std::ceil(exact - 1e-12)));
        // Guard against a float boundary: keep the forward inequality.
        while (m < kMMax && m_taylor(R, 0, m, space.s_star, space.target,
                                     space.a, space.b) > budget.rho_m)
            ++m;
        sol.m = m;
    } else {
        int m = 1;
        while (m < kMMax && m_taylor(R, space.d, m, space.s_star, space.target,
                                     space.a, space.b) > budget.rho_m)
            ++m;
        if (m_taylor(R, space.d, m, space.s_star, space.target, space.a,
                     space.b) > budget.rho_m)
            throw infeasible_error("solve_budget: no m <= 400 achieves rho_m");
        sol.m = m;
    }

    const int l_lo = std::max(1, 2 * budget.alpha - 3);
    auto interp_at = [&](int l) {
        return m_interp(R, space.d, sol.m, l, budget.alpha, space.s_lo,
                        space.s_hi, space.s_star, space.target);
    };
    if (interp_at(l_max) > budget.rho_l)
        throw infeasible_error(
            "solve_budget: no l <= l_max achieves rho_l (achieved minimum " +
            std::to_string(interp_at(l_max)) + ")");
    int lo = l_lo, hi = l_max;
    while (lo < hi) { // M_interp is decreasing in l
        const int mid = lo + (hi - lo) / 2;
        if (interp_at(mid) <= budget.rho_l)
            hi = mid;
        else
            lo = mid + 1;
    }
    sol.l = lo;

    const auto knots = chebyshev_knots(sol.l, space.s_lo, space.s_hi);
    sol.lambda =
        lambda_factor(knots, sol.m, space.d, space.s_star, space.target);
    const SampleSize size = hoeffding_sample_size(
        sol.l, sol.lambda, noise.tau_lo, noise.tau_hi, budget.rho, budget.eta);
    sol.n = size.n_star;
    sol.n_union = size.n_union;
    return sol;
}

double polynomial_variance(int d, std::span<const double> knots, double target,
                           double var_z,
                           std::span<const std::int64_t> frequencies) {
    if (knots.size() != frequencies.size())
        throw invalid_domain_error(
            "polynomial_variance: knots/frequencies size mismatch");
    if (var_z <= 0.0)
        throw invalid_domain_error("polynomial_variance: var_z must be > 0");
    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    double sum = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
        const auto nk = frequencies[static_cast<std::size_t>(k)];
        if (nk < 1)
            throw invalid_domain_error(
                "polynomial_variance: every frequency must be >= 1");
        const double deriv = basis.jet(k, target, d).derivative(d);
        sum += deriv * deriv * var_z / static_cast<double>(nk);
    }
    return sum;
}

std::int64_t tchebycheff_sample_size(int d, std::span<const double> knots,
                                     double target, double var_z, double eta,
                                     double omega) {
    if (eta <= 0.0)
        throw invalid_domain_error("tchebycheff_sample_size: eta must be > 0");
    if (!(omega > 0.0 && omega < 1.0))
        throw invalid_domain_error(
            "tchebycheff_sample_size: omega must be in (0,1)");
    if (var_z <= 0.0)
        throw invalid_domain_error("tchebycheff_sample_size: var_z must be > 0");
    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    double sum = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
        const double deriv = basis.jet(k, target, d).derivative(d);
        sum += deriv * deriv;
    }
    const double star = sum * var_z / (omega * eta * eta);
    const std::int64_t n = checked_int(std::floor(star), "tchebycheff n*");
    return std::max<std::int64_t>(n, basis.size());
}

} // namespace chebex
