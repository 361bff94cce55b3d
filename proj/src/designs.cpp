#include "chebex/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "chebex/polybasis.hpp"

namespace chebex {

void DesignSpace::validate() const {
    if (!(a < s_lo && s_lo < s_hi && s_hi < b))
        throw invalid_domain_error(
            "DesignSpace: need a < s_lo < s_hi < b (S compact inside D)");
    if (!(s_lo <= s_star && s_star <= s_hi))
        throw invalid_domain_error("DesignSpace: s_star must lie in [s_lo, s_hi]");
    if (!(a < target && target < b))
        throw invalid_domain_error("DesignSpace: target must lie in (a, b)");
    if (d < 0)
        throw invalid_domain_error("DesignSpace: derivative order d must be >= 0");
}

std::vector<double> chebyshev_knots(int l, double s_lo, double s_hi) {
    if (l < 0)
        throw invalid_domain_error("chebyshev_knots: l must be >= 0");
    if (s_lo >= s_hi)
        throw invalid_domain_error("chebyshev_knots: degenerate window");
    const double mid = 0.5 * (s_hi + s_lo);
    const double half = 0.5 * (s_hi - s_lo);
    std::vector<double> knots(static_cast<std::size_t>(l) + 1);
    for (int k = 0; k <= l; ++k)
        knots[static_cast<std::size_t>(k)] =
            mid - half * std::cos((2.0 * k + 1.0) * std::numbers::pi /
                                  (2.0 * (l + 1)));
    return knots; // cos decreases on (0, pi), so already ascending
}

double weight_pk(int k, std::span<const double> knots, double s_star,
                 double target, int m) {
    if (m < 1)
        throw invalid_domain_error("weight_pk: m must be >= 1");
    const Jet jet = lagrange_jet(knots, k, s_star, m);
    double sum = 0.0;
    double pow_term = 1.0; // (target - s_star)^a / a!
    for (int a = 0; a <= m; ++a) {
        sum += pow_term * jet.derivative(a);
        pow_term *= (target - s_star) / (a + 1);
    }
    return sum * sum;
}

std::vector<std::int64_t> allocate(std::int64_t n,
                                   std::span<const double> weights,
                                   bool redistribute) {
    const std::size_t count = weights.size();
    if (count == 0)
        throw invalid_domain_error("allocate: no weights");
    std::vector<double> roots(count);
    double total_root = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        if (weights[k] < 0.0)
            throw invalid_domain_error("allocate: negative weight");
        roots[k] = std::sqrt(weights[k]);
        total_root += roots[k];
    }
    if (total_root == 0.0)
        throw invalid_domain_error("allocate: all weights are zero");
    if (n < static_cast<std::int64_t>(count))
        throw infeasible_error(
            "allocate: budget smaller than the number of knots");

    if (!redistribute) {
        std::vector<std::int64_t> out(count);
        for (std::size_t k = 0; k < count; ++k)
            out[k] = static_cast<std::int64_t>(
                std::floor(n * roots[k] / total_root));
        return out;
    }

    // Largest-remainder allocation with a floor of one observation per knot:
    // knots whose floor is zero are fixed at 1 and the rest is re-floored on
    // the reduced budget.
    std::vector<std::int64_t> out(count, 0);
    std::vector<std::size_t> active(count);
    std::iota(active.begin(), active.end(), std::size_t{0});
    std::int64_t budget = n;

    while (!active.empty()) {
        double sum_active = 0.0;
        for (std::size_t k : active)
            sum_active += roots[k];
        std::vector<double> ideal(active.size());
        std::vector<std::int64_t> base(active.size());
        std::vector<std::size_t> zeros;
        for (std::size_t i = 0; i < active.size(); ++i) {
            ideal[i] = budget * roots[active[i]] / sum_active;
            base[i] = static_cast<std::int64_t>(std::floor(ideal[i]));
            if (base[i] == 0)
                zeros.push_back(i);
        }
        if (!zeros.empty()) {
            std::vector<std::size_t> next_active;
            std::size_t zi = 0;
            for (std::size_t i = 0; i < active.size(); ++i) {
                if (zi < zeros.size() && zeros[zi] == i) {
                    out[active[i]] = 1;
                    --budget;
                    ++zi;
                } else {
                    next_active.push_back(active[i]);
                }
            }
            active = std::move(next_active);
            continue;
        }
        std::int64_t leftover = budget;
        for (std::int64_t b : base)
            leftover -= b;
        // Largest fractional part first; ties broken by lowest knot index.
        std::vector<std::size_t> order(active.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) {
                             const double fx = ideal[x] - std::floor(ideal[x]);
                             const double fy = ideal[y] - std::floor(ideal[y]);
                             if (fx != fy)
                                 return fx > fy;
                             return active[x] < active[y];
                         });
        for (std::size_t i = 0; i < active.size(); ++i)
            out[active[i]] = base[i];
        for (std::int64_t u = 0; u < leftover; ++u)
            ++out[active[order[static_cast<std::size_t>(u)]]];
        break;
    }
    return out;
}

Design build_design(const DesignSpace& space, int l, int m, std::int64_t n) {
    space.validate();
    Design design;
    design.knots = chebyshev_knots(l, space.s_lo, space.s_hi);
    design.weights.resize(design.knots.size());
    for (int k = 0; k <= l; ++k)
        design.weights[static_cast<std::size_t>(k)] =
            weight_pk(k, design.knots, space.s_star, space.target, m);
    design.frequencies = allocate(n, design.weights, /*redistribute=*/true);
    design.total = n;
    return design;
}

} // namespace chebex
