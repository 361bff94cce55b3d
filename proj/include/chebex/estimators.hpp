#ifndef CHEBEX_ESTIMATORS_HPP
#define CHEBEX_ESTIMATORS_HPP

#include <span>
#include <vector>

#include "chebex/errors.hpp"

namespace chebex {

// Observations grouped by knot; frequencies are implied by the list lengths.
using SampleSet = std::vector<std::vector<double>>;

// Sample means per knot. With sigma = 1 the least-squares estimate of
// phi(s_k) is the mean of the observations at s_k.
struct KnotEstimates {
    std::vector<double> values;
};

// Highest jet order accepted by the Taylor estimator; factorial terms
// beyond this are numerically meaningless in double precision.
inline constexpr int kMaxJetOrder = 64;

KnotEstimates knot_means(const SampleSet& samples);

// sum_k estimates[k] * L_k^(order)(point).
double interpolate_derivative(std::span<const double> knots,
                              std::span<const double> estimates, int order,
                              double point);

// Truncated Taylor extrapolation of phi^(d) at `target` from s_star:
// sum_{i=0}^{m-1} (target-s_star)^i / i! * sum_k estimates[k] L_k^(d+i)(s_star).
double taylor_extrapolate(std::span<const double> knots,
                          std::span<const double> estimates, int d, int m,
                          double s_star, double target);

// Hoel-type estimator for a polynomial of degree <= g-1 with g knots:
// sum_k L_k^(d)(target) * means[k], no Taylor step.
double hoel_polynomial_estimate(std::span<const double> knots,
                                std::span<const double> means, int d,
                                double target);

} // namespace chebex

#endif
