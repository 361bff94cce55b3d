#ifndef CHEBEX_BOUNDS_HPP
#define CHEBEX_BOUNDS_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "chebex/designs.hpp"

namespace chebex {

// Distribution of the noise variable Z in the location-scale model
// Y = phi(s) + sigma (Z - E(Z)). For bounded noise [tau_lo, tau_hi] is the
// declared support of Y itself, the input to the Hoeffding sizing.
struct NoiseModel {
    enum class Kind { bounded, unbounded };

    Kind kind = Kind::bounded;
    double sigma = 1.0;
    double mean_z = 0.0;
    double var_z = 1.0;
    double tau_lo = -1.0;
    double tau_hi = 1.0;

    void validate() const;

    // R = max(|tau_lo|, |tau_hi|), the sup bound on |phi|.
    double range() const;
    // tau_hi - tau_lo.
    double width() const;
};

// Error radii for the budget solver: rho_m/rho_l for the Taylor and
// interpolation terms, rho and eta for the Hoeffding sizing, omega for the
// Tchebycheff guarantee, alpha the smoothness order used in K.
struct ErrorBudget {
    double rho_m = 1e-2;
    double rho_l = 1e-2;
    double rho_n = 0.0;
    double rho = 1e-2;
    double eta = 0.05;
    double omega = 0.1;
    int alpha = 1;

    void validate() const;
};

// The three-term extrapolation bound, total = m_taylor + m_interp + m_est.
struct BoundReport {
    double m_taylor = 0.0;
    double m_interp = 0.0;
    double lambda = 0.0;
    double k_factor = 0.0;
    double m_est = 0.0;
    double total = 0.0;
};

// M_Taylor = R (d+m)!/m! (|s_star-target|/(b-a))^m (b-a)^(-d).
double m_taylor(double R, int d, int m, double s_star, double target, double a,
                double b);

// K(l,alpha) = (9 + (4/pi) ln(1+l)) (pi/(2(1+l)))^alpha.
double k_factor(int l, int alpha);

// M_interp = K(l,alpha) R/(s_hi-s_lo)^(d+alpha)
//            * sum_{i<m} (|s_star-target|/(s_hi-s_lo))^i (d+i+alpha)!/i!.
double m_interp(double R, int d, int m, int l, int alpha, double s_lo,
                double s_hi, double s_star, double target);

// Lambda(l,m) = sum_{i<m} sum_k |s_star-target|^i/i! |L_k^(d+i)(s_star)|.
double lambda_factor(std::span<const double> knots, int m, int d, double s_star,
                     double target);

// A-priori report: M_est is the radius rho_n granted by the sampling budget.
BoundReport total_bound(const DesignSpace& space, const Design& design,
                        const NoiseModel& noise, int m, int alpha,
                        double rho_n);

// A-posteriori report: M_est = Lambda * max_k |residuals[k]|.
BoundReport total_bound_posteriori(const DesignSpace& space,
                                   const Design& design,
                                   const NoiseModel& noise, int m, int alpha,
                                   std::span<const double> residuals);

// M(m,l,alpha) = A(alpha,l) + B(m) with caller-supplied sup-bounds:
// sup_abs_deriv(j, lo, hi) must return sup over [lo,hi] of |phi^(j)|.
double approximation_bound(
    int alpha, int l, int m, int d, const DesignSpace& space,
    const std::function<double(int, double, double)>& sup_abs_deriv);

struct SampleSize {
    std::int64_t n_star = 0;  // the paper's floor formula
    std::int64_t n_union = 0; // conservative union-bound alternate
};

// n* = floor(((l+1) ln 2 - ln eta)/2 * (Lambda (tau_hi-tau_lo)/rho)^2),
// plus the union-bound variant under equal per-knot split.
SampleSize hoeffding_sample_size(int l, double lambda, double tau_lo,
                                 double tau_hi, double rho, double eta);

struct BudgetSolution {
    int m = 0;
    int l = 0;
    std::int64_t n = 0;
    std::int64_t n_union = 0;
    double lambda = 0.0;
};

inline constexpr int kDefaultLMax = 1000;

// Invert (M_Taylor, M_interp) = (rho_m, rho_l) for (m, l), then size n via
// the Hoeffding formula with Lambda computed on the resulting knots.
BudgetSolution solve_budget(const ErrorBudget& budget, const DesignSpace& space,
                            const NoiseModel& noise, int l_max = kDefaultLMax);

// Var(hat phi^(d)) = sum_k (L_k^(d)(target))^2 var_z / n_k.
double polynomial_variance(int d, std::span<const double> knots, double target,
                           double var_z,
                           std::span<const std::int64_t> frequencies);

// n* = sum_k (L_k^(d)(target))^2 var_z / (omega eta^2), floored, at least
// one observation per knot.
std::int64_t tchebycheff_sample_size(int d, std::span<const double> knots,
                                     double target, double var_z, double eta,
                                     double omega);

} // namespace chebex

#endif
