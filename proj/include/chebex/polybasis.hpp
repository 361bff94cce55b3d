#ifndef CHEBEX_POLYBASIS_HPP
#define CHEBEX_POLYBASIS_HPP

#include <span>
#include <vector>

#include "chebex/jet.hpp"

namespace chebex {

// Elementary Lagrange basis over a fixed set of distinct knots.
// Precomputes the denominator products so that evaluating all l+1 basis
// polynomials at a point costs O(l).
class LagrangeBasis {
  public:
    explicit LagrangeBasis(std::vector<double> knots);

    int size() const { return static_cast<int>(knots_.size()); }
    const std::vector<double>& knots() const { return knots_; }

    // All basis values L_k(point), via prefix/suffix products.
    std::vector<double> values(double point) const;

    // Sum_k |L_k(point)|.
    double lebesgue(double point) const;

    // Jet of L_k at `point` up to the requested order, built by multiplying
    // the linear-factor jets in order of increasing |point - s_j|.
    Jet jet(int k, double point, int order) const;

  private:
    std::vector<double> knots_;
    std::vector<double> inv_denom_; // 1 / prod_{j != k} (s_k - s_j)
};

// One-shot wrappers.
Jet lagrange_jet(std::span<const double> knots, int k, double point, int order);
double lebesgue_function(std::span<const double> knots, double point);

// Max over a uniform grid (endpoints included) of sum_k |L_k|.
double lebesgue_grid_max(const LagrangeBasis& basis, double s_lo, double s_hi,
                         int grid_size);

// Closed form for the Chebyshev Lebesgue constant:
// (1/(l+1)) sum_k ctg((2k+1) pi / (4(l+1))).
double lebesgue_constant_chebyshev(int l);

// 2^(l+1) / (e l (ln l + gamma)), the equidistant growth rate. Needs l >= 2.
double equidistant_lebesgue_asymptote(int l);

// Markoff's uniform bound for the j-th derivative of a degree-l polynomial
// with sup-norm W on [s_lo, s_hi]. Zero when j > l.
double markoff_bound(int l, int j, double s_lo, double s_hi, double w);

// Grid max over k and over S of |L_k| for the Chebyshev design of degree l.
double elementary_lagrange_sup_check(int l, int grid_size);

// Uniform nodes on [s_lo, s_hi], used for the instability diagnostics.
std::vector<double> equidistant_knots(int l, double s_lo, double s_hi);

} // namespace chebex

#endif
