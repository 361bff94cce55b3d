#include "chebex/mc.hpp"

#include <cmath>
#include <numbers>

#include "chebex/polybasis.hpp"

namespace chebex {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

} // namespace

SplitStream::SplitStream(std::uint64_t seed, std::uint64_t knot,
                         std::uint64_t replicate) {
    std::uint64_t s = mix64(seed + 0x9E3779B97F4A7C15ull);
    s = mix64(s ^ (knot + 0xD1B54A32D192ED03ull));
    s = mix64(s ^ (replicate + 0x8CB92BA72F3D8DD7ull));
    state_ = s;
}

std::uint64_t SplitStream::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
}

double SplitStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double SplitStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

namespace {

double draw_observation(SplitStream& stream, const NoiseModel& noise,
                        double phi_value) {
    if (noise.sigma == 0.0)
        return phi_value;
    if (noise.kind == NoiseModel::Kind::bounded) {
        // Z uniform with the declared mean/variance; eps = sigma (Z - E Z).
        const double half = std::sqrt(3.0 * noise.var_z);
        return phi_value + noise.sigma * half * (2.0 * stream.uniform01() - 1.0);
    }
    return phi_value + noise.sigma * std::sqrt(noise.var_z) * stream.gaussian();
}

} // namespace

SampleSet sample_observations(const Design& design, const TestFunction& phi,
                              const NoiseModel& noise, std::uint64_t seed,
                              std::uint64_t replicate) {
    noise.validate();
    SampleSet samples(design.knots.size());
    for (std::size_t k = 0; k < design.knots.size(); ++k) {
        const double value = phi.value(design.knots[k]);
        SplitStream stream(seed, k, replicate);
        auto& obs = samples[k];
        obs.resize(static_cast<std::size_t>(design.frequencies[k]));
        for (auto& y : obs)
            y = draw_observation(stream, noise, value);
    }
    return samples;
}

CoverageReport run_coverage_experiment(const DesignSpace& space,
                                       const Design& design,
                                       const TestFunction& phi,
                                       const NoiseModel& noise, int m,
                                       int alpha, const ErrorBudget& budget,
                                       std::int64_t replicates,
                                       std::uint64_t seed) {
    if (replicates < 1)
        throw invalid_domain_error("run_coverage_experiment: replicates >= 1");
    budget.validate();
    if (noise.kind == NoiseModel::Kind::unbounded)
        throw config_error(
            "run_coverage_experiment: bound accounting needs bounded noise");

    // a-priori report; M_est is the radius rho granted by Prop 2 sizing
    const BoundReport apriori =
        total_bound(space, design, noise, m, alpha, budget.rho);
    const double deterministic = apriori.m_taylor + apriori.m_interp;
    const double threshold = budget.rho / apriori.lambda;
    const double exact = phi.derivative(space.d, space.target);

    // Per-knot weight of the knot estimate in the Taylor estimator.
    LagrangeBasis basis(design.knots);
    const int top_order = space.d + m - 1;
    std::vector<double> coef(design.knots.size());
    std::vector<double> truth(design.knots.size());
    for (std::size_t k = 0; k < design.knots.size(); ++k) {
        const Jet jet = basis.jet(static_cast<int>(k), space.s_star, top_order);
        double term = 0.0;
        double pow_term = 1.0;
        for (int i = 0; i < m; ++i) {
            term += pow_term * jet.derivative(space.d + i);
            pow_term *= (space.target - space.s_star) / (i + 1);
        }
        coef[k] = term;
        truth[k] = phi.value(design.knots[k]);
    }

    CoverageReport report;
    report.replicates = replicates;
    report.bound_value = apriori.total;
    report.seed = seed;
    double abs_error_sum = 0.0;

    for (std::int64_t r = 0; r < replicates; ++r) {
        double estimate = 0.0;
        double max_residual = 0.0;
        for (std::size_t k = 0; k < design.knots.size(); ++k) {
            SplitStream stream(seed, k, static_cast<std::uint64_t>(r));
            double sum = 0.0;
            const auto nk = design.frequencies[k];
            for (std::int64_t j = 0; j < nk; ++j)
                sum += draw_observation(stream, noise, truth[k]);
            const double mean = sum / static_cast<double>(nk);
            estimate += coef[k] * mean;
            max_residual = std::max(max_residual, std::abs(truth[k] - mean));
        }
        const double err = std::abs(exact - estimate);
        abs_error_sum += err;
        if (max_residual >= threshold)
            ++report.exceed_count_est;
        if (err > apriori.total)
            ++report.exceed_count_total;
        if (err > deterministic + apriori.lambda * max_residual)
            ++report.aposteriori_violations;
    }

    report.empirical_rate_est = static_cast<double>(report.exceed_count_est) /
                                static_cast<double>(replicates);
    report.empirical_rate_total =
        static_cast<double>(report.exceed_count_total) /
        static_cast<double>(replicates);
    report.mean_abs_error = abs_error_sum / static_cast<double>(replicates);
    return report;
}

namespace {

#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
#else
using wide = long double;
#endif

// L_k^(j)(v) by a truncated jet product carried in wide arithmetic; keeps
// the rounding floor of the sup-error study below the true interpolation
// error for analytic functions up to l ~ 20.
wide wide_basis_derivative(const std::vector<double>& knots, std::size_t k,
                           wide v, int j) {
    std::vector<wide> c(static_cast<std::size_t>(j) + 1, wide(0));
    c[0] = wide(1);
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (i == k)
            continue;
        const wide inv = wide(1) / (wide(knots[k]) - wide(knots[i]));
        const wide a0 = (v - wide(knots[i])) * inv;
        for (std::size_t t = c.size(); t-- > 0;) {
            c[t] *= a0;
            if (t > 0)
                c[t] += c[t - 1] * inv;
        }
    }
    wide fact = 1;
    for (int t = 2; t <= j; ++t)
        fact *= t;
    return c[static_cast<std::size_t>(j)] * fact;
}

double wide_sup_error(const TestFunction& phi, const std::vector<double>& knots,
                      double s_lo, double s_hi, int j, int grid_size) {
    std::vector<wide> values(knots.size());
    for (std::size_t k = 0; k < knots.size(); ++k)
        values[k] = wide(phi.derivative_ext(0, knots[k]));
    wide sup_err = 0;
    for (int g = 0; g < grid_size; ++g) {
        const double v = s_lo + (s_hi - s_lo) * g / (grid_size - 1);
        wide interp = 0;
        for (std::size_t k = 0; k < knots.size(); ++k)
            interp += values[k] * wide_basis_derivative(knots, k, wide(v), j);
        wide err = wide(phi.derivative_ext(j, v)) - interp;
        if (err < 0)
            err = -err;
        sup_err = std::max(sup_err, err);
    }
    return static_cast<double>(sup_err);
}

} // namespace

std::vector<std::pair<int, double>>
interpolation_decay_study(const TestFunction& phi, double s_lo, double s_hi,
                          int j, const std::vector<int>& l_values,
                          int grid_size) {
    std::vector<std::pair<int, double>> table;
    table.reserve(l_values.size());
    for (int l : l_values) {
        const auto knots = chebyshev_knots(l, s_lo, s_hi);
        if (phi.derivative_ext) {
            table.emplace_back(l,
                               wide_sup_error(phi, knots, s_lo, s_hi, j,
                                              grid_size));
            continue;
        }
        LagrangeBasis basis(knots);
        std::vector<double> values(knots.size());
        for (std::size_t k = 0; k < knots.size(); ++k)
            values[k] = phi.value(knots[k]);
        double sup_err = 0.0;
        for (int g = 0; g < grid_size; ++g) {
            const double v = s_lo + (s_hi - s_lo) * g / (grid_size - 1);
            double interp = 0.0;
            if (j == 0) {
                const auto b = basis.values(v);
                for (std::size_t k = 0; k < knots.size(); ++k)
                    interp += values[k] * b[k];
            } else {
                for (std::size_t k = 0; k < knots.size(); ++k)
                    interp += values[k] *
                              basis.jet(static_cast<int>(k), v, j).derivative(j);
            }
            sup_err = std::max(sup_err, std::abs(phi.derivative(j, v) - interp));
        }
        table.emplace_back(l, sup_err);
    }
    return table;
}

} // namespace chebex
