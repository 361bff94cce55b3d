#ifndef CHEBEX_MC_HPP
#define CHEBEX_MC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "chebex/bounds.hpp"
#include "chebex/estimators.hpp"
#include "chebex/testfunctions.hpp"

namespace chebex {

// Counter-based splittable stream keyed by (seed, knot, replicate).
// Bit-reproducible on any platform and under any parallel schedule.
class SplitStream {
  public:
    SplitStream(std::uint64_t seed, std::uint64_t knot, std::uint64_t replicate);

    std::uint64_t next_u64();
    double uniform01();               // [0, 1), 53-bit
    double uniform(double lo, double hi);
    double gaussian();                // standard normal, Box-Muller

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Empirical coverage of the probabilistic guarantees.
struct CoverageReport {
    std::int64_t replicates = 0;
    std::int64_t exceed_count_est = 0;   // max_k |eps(k)| >= rho/Lambda
    std::int64_t exceed_count_total = 0; // |E_ext| > a-priori bound
    std::int64_t aposteriori_violations = 0;
    double empirical_rate_est = 0.0;
    double empirical_rate_total = 0.0;
    double mean_abs_error = 0.0;
    double bound_value = 0.0; // a-priori total
    std::uint64_t seed = 0;
};

// Draw n_k observations per knot from the location-scale model
// Y = phi(s_k) + sigma (Z - E(Z)); bounded noise uses uniform Z, unbounded
// Gaussian Z. Deterministic given (seed, replicate).
SampleSet sample_observations(const Design& design, const TestFunction& phi,
                              const NoiseModel& noise, std::uint64_t seed,
                              std::uint64_t replicate = 0);

// Full pipeline per replicate: sample -> knot means -> Taylor extrapolation;
// counts exceedances of rho/Lambda by the max residual and of the a-priori
// bound by the realized error. Requires bounded noise.
CoverageReport run_coverage_experiment(const DesignSpace& space,
                                       const Design& design,
                                       const TestFunction& phi,
                                       const NoiseModel& noise, int m,
                                       int alpha, const ErrorBudget& budget,
                                       std::int64_t replicates,
                                       std::uint64_t seed);

// For each l: Chebyshev knots, exact phi(s_k), sup over a uniform grid of
// |phi^(j) - L_l(phi^(j))| on [s_lo, s_hi].
std::vector<std::pair<int, double>>
interpolation_decay_study(const TestFunction& phi, double s_lo, double s_hi,
                          int j, const std::vector<int>& l_values,
                          int grid_size = 10000);

} // namespace chebex

#endif
