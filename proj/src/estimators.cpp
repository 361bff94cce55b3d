#include "chebex/estimators.hpp"

#include <cmath>

#include "chebex/polybasis.hpp"

namespace chebex {

KnotEstimates knot_means(const SampleSet& samples) {
    KnotEstimates est;
    est.values.reserve(samples.size());
    for (const auto& obs : samples) {
        if (obs.empty())
            throw invalid_domain_error("knot_means: knot without observations");
        double sum = 0.0;
        for (double y : obs)
            sum += y;
        est.values.push_back(sum / static_cast<double>(obs.size()));
    }
    return est;
}

double interpolate_derivative(std::span<const double> knots,
                              std::span<const double> estimates, int order,
                              double point) {
    if (knots.size() != estimates.size())
        throw invalid_domain_error(
            "interpolate_derivative: knots/estimates size mismatch");
    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    double sum = 0.0;
    for (int k = 0; k < basis.size(); ++k)
        sum += estimates[static_cast<std::size_t>(k)] *
               basis.jet(k, point, order).derivative(order);
    return sum;
}

double taylor_extrapolate(std::span<const double> knots,
                          std::span<const double> estimates, int d, int m,
                          double s_star, double target) {
    if (m < 1)
        throw invalid_domain_error("taylor_extrapolate: m must be >= 1");
    if (d < 0)
        throw invalid_domain_error("taylor_extrapolate: d must be >= 0");
    if (knots.size() != estimates.size())
        throw invalid_domain_error(
            "taylor_extrapolate: knots/estimates size mismatch");
    const int top_order = d + m - 1;
    if (top_order > kMaxJetOrder)
        throw config_error("taylor_extrapolate: jet order d+m-1 exceeds cap");

    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    // One jet per basis polynomial delivers all m derivative orders at once.
    double result = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
        const Jet jet = basis.jet(k, s_star, top_order);
        double term = 0.0;
        double pow_term = 1.0; // (target - s_star)^i / i!
        for (int i = 0; i < m; ++i) {
            term += pow_term * jet.derivative(d + i);
            pow_term *= (target - s_star) / (i + 1);
        }
        result += estimates[static_cast<std::size_t>(k)] * term;
    }
    return result;
}

double hoel_polynomial_estimate(std::span<const double> knots,
                                std::span<const double> means, int d,
                                double target) {
    if (knots.size() != means.size())
        throw invalid_domain_error(
            "hoel_polynomial_estimate: knots/means size mismatch");
    return interpolate_derivative(knots, means, d, target);
}

} // namespace chebex
