#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "chebex/designs.hpp"
#include "chebex/polybasis.hpp"

using namespace chebex;

TEST_CASE("chebyshev knots: small cases") {
    const auto single = chebyshev_knots(0, -1.0, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == doctest::Approx(0.0));

    const auto pair = chebyshev_knots(1, -1.0, 1.0);
    CHECK(pair[0] == doctest::Approx(-std::sqrt(2.0) / 2.0));
    CHECK(pair[1] == doctest::Approx(std::sqrt(2.0) / 2.0));

    const auto triple = chebyshev_knots(2, 0.0, 2.0);
    CHECK(triple[0] == doctest::Approx(1.0 - std::sqrt(3.0) / 2.0));
    CHECK(triple[1] == doctest::Approx(1.0));
    CHECK(triple[2] == doctest::Approx(1.0 + std::sqrt(3.0) / 2.0));
}

TEST_CASE("chebyshev knots: degenerate window rejected") {
    CHECK_THROWS_AS(chebyshev_knots(3, 1.0, 1.0), invalid_domain_error);
    CHECK_THROWS_AS(chebyshev_knots(3, 2.0, 1.0), invalid_domain_error);
}

TEST_CASE("chebyshev knots: symmetric about the midpoint") {
    for (int l : {1, 4, 9, 40}) {
        const auto knots = chebyshev_knots(l, -0.3, 1.7);
        const double c = 0.7;
        for (int k = 0; k <= l; ++k)
            CHECK(knots[static_cast<std::size_t>(k)] +
                      knots[static_cast<std::size_t>(l - k)] ==
                  doctest::Approx(2.0 * c).epsilon(1e-12));
    }
}

TEST_CASE("chebyshev knots: inside the open window with positive gaps") {
    const int l = 10000;
    const auto knots = chebyshev_knots(l, -1.0, 1.0);
    CHECK(knots.front() > -1.0);
    CHECK(knots.back() < 1.0);
    double min_gap = 2.0;
    for (std::size_t i = 1; i < knots.size(); ++i)
        min_gap = std::min(min_gap, knots[i] - knots[i - 1]);
    CHECK(min_gap > 0.0);
}

TEST_CASE("weight_pk: hand-evaluated cases") {
    CHECK(weight_pk(0, std::vector<double>{0.4}, 0.1, 3.0, 2) ==
          doctest::Approx(1.0));
    const std::vector<double> knots{0.0, 1.0};
    CHECK(weight_pk(0, knots, 0.0, 2.0, 1) == doctest::Approx(1.0));
    CHECK(weight_pk(1, knots, 0.0, 2.0, 1) == doctest::Approx(4.0));
}

TEST_CASE("weight_pk equals the printed double sum") {
    // Oracle: evaluate the (alpha, beta) double sum directly.
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int l = 1 + static_cast<int>(rng() % 5);
        std::vector<double> knots;
        while (static_cast<int>(knots.size()) <= l) {
            const double s = unif(rng);
            bool ok = true;
            for (double t : knots)
                if (std::abs(t - s) < 0.05)
                    ok = false;
            if (ok)
                knots.push_back(s);
        }
        std::sort(knots.begin(), knots.end());
        const double s_star = unif(rng);
        const double target = 1.5 + unif(rng);
        const int m = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k <= l; ++k) {
            const Jet jet = lagrange_jet(knots, k, s_star, m);
            double dsum = 0.0;
            for (int a = 0; a <= m; ++a)
                for (int b = 0; b <= m; ++b) {
                    double fact = 1.0;
                    for (int t = 2; t <= a; ++t)
                        fact *= t;
                    for (int t = 2; t <= b; ++t)
                        fact *= t;
                    dsum += std::pow(target - s_star, a + b) / fact *
                            jet.derivative(a) * jet.derivative(b);
                }
            dsum = std::abs(dsum);
            const double single = weight_pk(k, knots, s_star, target, m);
            CHECK(single == doctest::Approx(dsum).epsilon(1e-10).scale(
                                std::abs(dsum) + 1.0));
        }
    }
}

TEST_CASE("allocate: worked examples") {
    CHECK(allocate(10, std::vector<double>{1.0, 1.0}, true) ==
          std::vector<std::int64_t>{5, 5});
    CHECK(allocate(10, std::vector<double>{1.0, 4.0}, false) ==
          std::vector<std::int64_t>{3, 6});
    // fractional parts 1/3 and 2/3: the leftover unit goes to index 1
    CHECK(allocate(10, std::vector<double>{1.0, 4.0}, true) ==
          std::vector<std::int64_t>{3, 7});
}

TEST_CASE("allocate: errors") {
    CHECK_THROWS_AS(allocate(2, std::vector<double>{1.0, 1.0, 1.0}, true),
                    infeasible_error);
    CHECK_THROWS_AS(allocate(5, std::vector<double>{0.0, 0.0}, true),
                    invalid_domain_error);
    CHECK_THROWS_AS(allocate(5, std::vector<double>{1.0, -1.0}, true),
                    invalid_domain_error);
}

TEST_CASE("allocate: conserves the budget and keeps every knot alive") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const int count = 1 + static_cast<int>(rng() % 8);
        std::vector<double> weights(static_cast<std::size_t>(count));
        for (auto& w : weights)
            w = std::pow(unif(rng), 4.0); // spread over orders of magnitude
        if (std::accumulate(weights.begin(), weights.end(), 0.0) == 0.0)
            continue;
        const std::int64_t n = count + static_cast<std::int64_t>(rng() % 50);
        const auto freq = allocate(n, weights, true);
        CHECK(std::accumulate(freq.begin(), freq.end(), std::int64_t{0}) == n);
        for (auto f : freq)
            CHECK(f >= 1);
    }
}

TEST_CASE("allocate: invariant under weight rescaling") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> weights{unif(rng), unif(rng), unif(rng), unif(rng)};
        const auto base = allocate(37, weights, true);
        for (double lambda : {0.25, 3.0, 1e6}) {
            auto scaled = weights;
            for (auto& w : scaled)
                w *= lambda;
            CHECK(allocate(37, scaled, true) == base);
        }
    }
}

TEST_CASE("build_design: single knot takes the whole budget") {
    DesignSpace space;
    space.a = -2.0;
    space.b = 2.0;
    space.s_lo = -1.0;
    space.s_hi = 1.0;
    space.s_star = 0.0;
    space.target = 1.5;
    const Design design = build_design(space, 0, 1, 5);
    REQUIRE(design.knots.size() == 1);
    CHECK(design.knots[0] == doctest::Approx(0.0));
    CHECK(design.frequencies == std::vector<std::int64_t>{5});
}

TEST_CASE("build_design: two-knot design on [0,1]") {
    DesignSpace space;
    space.a = -1.0;
    space.b = 3.0;
    space.s_lo = 0.0;
    space.s_hi = 1.0;
    space.s_star = 0.0;
    space.target = 2.0;
    const Design design = build_design(space, 1, 1, 20);
    REQUIRE(design.knots.size() == 2);
    // hand chain: P_k = (L_k(0) + 2 L_k'(0))^2 on the mapped Chebyshev knots
    CHECK(design.weights[1] > design.weights[0]);
    CHECK(design.frequencies[0] + design.frequencies[1] == 20);
    CHECK(design.frequencies[1] > design.frequencies[0]);
}

TEST_CASE("build_design: infeasible budget") {
    DesignSpace space;
    space.a = -2.0;
    space.b = 2.0;
    space.s_lo = -1.0;
    space.s_hi = 1.0;
    space.s_star = 1.0;
    space.target = 1.5;
    CHECK_THROWS_AS(build_design(space, 3, 2, 3), infeasible_error);
}

TEST_CASE("design space validation") {
    DesignSpace space;
    space.a = -1.0;
    space.b = 1.0;
    space.s_lo = -1.0; // not strictly inside D
    space.s_hi = 0.5;
    space.s_star = 0.0;
    space.target = 0.7;
    CHECK_THROWS_AS(space.validate(), invalid_domain_error);
    space.a = -2.0;
    space.s_star = 0.9; // outside S
    CHECK_THROWS_AS(space.validate(), invalid_domain_error);
    space.s_star = 0.0;
    space.target = 1.5; // outside D
    CHECK_THROWS_AS(space.validate(), invalid_domain_error);
    space.target = 0.7;
    CHECK_NOTHROW(space.validate());
}
