#ifndef CHEBEX_DESIGNS_HPP
#define CHEBEX_DESIGNS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "chebex/errors.hpp"

namespace chebex {

// Geometry of the problem: ambient interval D = (a,b), observation window
// S = [s_lo, s_hi] strictly inside D, expansion point s_star in S, the point
// where the d-th derivative is wanted, and the derivative order.
struct DesignSpace {
    double a = -1.0;
    double b = 1.0;
    double s_lo = -1.0;
    double s_hi = 1.0;
    double s_star = 0.0;
    double target = 0.0;
    int d = 0;

    void validate() const;
};

// The design itself: knots, the P_k weights they were allocated by, the
// per-knot observation frequencies and the total budget.
struct Design {
    std::vector<double> knots;
    std::vector<double> weights;
    std::vector<std::int64_t> frequencies;
    std::int64_t total = 0;

    int degree() const { return static_cast<int>(knots.size()) - 1; }
};

// First-kind Chebyshev knots on [s_lo, s_hi], ascending:
// s_k = (s_hi+s_lo)/2 - ((s_hi-s_lo)/2) cos((2k+1) pi / (2l+2)).
std::vector<double> chebyshev_knots(int l, double s_lo, double s_hi);

// P_k = (sum_{a=0}^{m} (target-s_star)^a / a! * L_k^(a)(s_star))^2.
// The squared single sum equals the printed double sum over (alpha, beta).
double weight_pk(int k, std::span<const double> knots, double s_star,
                 double target, int m);

// n_k = floor(n sqrt(P_k) / sum_j sqrt(P_j)). With `redistribute` the
// leftover units go to the largest fractional parts (ties: lowest index)
// and every knot is guaranteed at least one observation.
std::vector<std::int64_t> allocate(std::int64_t n,
                                   std::span<const double> weights,
                                   bool redistribute);

Design build_design(const DesignSpace& space, int l, int m, std::int64_t n);

} // namespace chebex

#endif
