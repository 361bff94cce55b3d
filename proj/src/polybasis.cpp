#include "chebex/polybasis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace chebex {

namespace {

void check_distinct(const std::vector<double>& knots) {
    for (std::size_t i = 0; i < knots.size(); ++i)
        for (std::size_t j = i + 1; j < knots.size(); ++j)
            if (knots[i] == knots[j])
                throw invalid_domain_error("LagrangeBasis: coincident knots");
}

} // namespace

LagrangeBasis::LagrangeBasis(std::vector<double> knots)
    : knots_(std::move(knots)) {
    if (knots_.empty())
        throw invalid_domain_error("LagrangeBasis: empty knot set");
    check_distinct(knots_);
    inv_denom_.resize(knots_.size());
    for (std::size_t k = 0; k < knots_.size(); ++k) {
        double denom = 1.0;
        for (std::size_t j = 0; j < knots_.size(); ++j)
            if (j != k)
                denom *= knots_[k] - knots_[j];
        inv_denom_[k] = 1.0 / denom;
    }
}

std::vector<double> LagrangeBasis::values(double point) const {
    const std::size_t n = knots_.size();
    // prefix[k] = prod_{j<k} (point - s_j), suffix[k] = prod_{j>=k} (...)
    std::vector<double> prefix(n + 1), suffix(n + 1);
    prefix[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k)
        prefix[k + 1] = prefix[k] * (point - knots_[k]);
    suffix[n] = 1.0;
    for (std::size_t k = n; k-- > 0;)
        suffix[k] = suffix[k + 1] * (point - knots_[k]);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = prefix[k] * suffix[k + 1] * inv_denom_[k];
    return out;
}

double LagrangeBasis::lebesgue(double point) const {
    const auto v = values(point);
    double sum = 0.0;
    for (double x : v)
        sum += std::abs(x);
    return sum;
}

Jet LagrangeBasis::jet(int k, double point, int order) const {
    if (k < 0 || k >= size())
        throw invalid_domain_error("LagrangeBasis::jet: knot index out of range");
    if (order < 0)
        throw invalid_domain_error("LagrangeBasis::jet: negative order");

    // Factors sorted by distance from the evaluation point keep the running
    // product balanced.
    std::vector<int> idx;
    idx.reserve(knots_.size() - 1);
    for (int j = 0; j < size(); ++j)
        if (j != k)
            idx.push_back(j);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(point - knots_[static_cast<std::size_t>(a)]) <
               std::abs(point - knots_[static_cast<std::size_t>(b)]);
    });

    Jet result = Jet::constant(point, 1.0, order);
    const double sk = knots_[static_cast<std::size_t>(k)];
    for (int j : idx) {
        const double sj = knots_[static_cast<std::size_t>(j)];
        const double scale = 1.0 / (sk - sj);
        result.multiply_linear((point - sj) * scale, scale);
    }
    return result;
}

Jet lagrange_jet(std::span<const double> knots, int k, double point,
                 int order) {
    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    return basis.jet(k, point, order);
}

double lebesgue_function(std::span<const double> knots, double point) {
    LagrangeBasis basis(std::vector<double>(knots.begin(), knots.end()));
    return basis.lebesgue(point);
}

double lebesgue_grid_max(const LagrangeBasis& basis, double s_lo, double s_hi,
                         int grid_size) {
    if (grid_size < 2)
        throw invalid_domain_error("lebesgue_grid_max: grid_size < 2");
    double best = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double t = static_cast<double>(i) / (grid_size - 1);
        const double v = s_lo + t * (s_hi - s_lo);
        best = std::max(best, basis.lebesgue(v));
    }
    return best;
}

double lebesgue_constant_chebyshev(int l) {
    if (l < 0)
        throw invalid_domain_error("lebesgue_constant_chebyshev: l < 0");
    double sum = 0.0;
    for (int k = 0; k <= l; ++k) {
        const double angle =
            (2.0 * k + 1.0) * std::numbers::pi / (4.0 * (l + 1));
        sum += 1.0 / std::tan(angle);
    }
    return sum / (l + 1);
}

double equidistant_lebesgue_asymptote(int l) {
    if (l < 2)
        throw invalid_domain_error("equidistant_lebesgue_asymptote: l < 2");
    const double gamma = 0.577; // Euler-Mascheroni, two-digit convention
    return std::pow(2.0, l + 1) /
           (std::numbers::e * l * (std::log(static_cast<double>(l)) + gamma));
}

double markoff_bound(int l, int j, double s_lo, double s_hi, double w) {
    if (j < 1)
        throw invalid_domain_error("markoff_bound: j must be >= 1");
    if (s_lo >= s_hi)
        throw invalid_domain_error("markoff_bound: degenerate interval");
    if (w < 0.0)
        throw invalid_domain_error("markoff_bound: negative sup norm");
    const double l2 = static_cast<double>(l) * l;
    double num = 1.0;
    double dfact = 1.0; // (2j-1)!!
    for (int i = 0; i < j; ++i) {
        num *= l2 - static_cast<double>(i) * i; // hits zero when j > l
        dfact *= 2.0 * i + 1.0;
    }
    return num / dfact * std::pow(2.0 / (s_hi - s_lo), j) * w;
}

double elementary_lagrange_sup_check(int l, int grid_size) {
    if (grid_size < 2)
        throw invalid_domain_error("elementary_lagrange_sup_check: grid < 2");
    std::vector<double> knots(static_cast<std::size_t>(l) + 1);
    for (int k = 0; k <= l; ++k)
        knots[static_cast<std::size_t>(k)] =
            -std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * (l + 1)));
    LagrangeBasis basis(std::move(knots));
    double best = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double v = -1.0 + 2.0 * i / (grid_size - 1);
        for (double x : basis.values(v))
            best = std::max(best, std::abs(x));
    }
    return best;
}

std::vector<double> equidistant_knots(int l, double s_lo, double s_hi) {
    if (l < 1)
        throw invalid_domain_error("equidistant_knots: l must be >= 1");
    if (s_lo >= s_hi)
        throw invalid_domain_error("equidistant_knots: degenerate window");
    std::vector<double> out(static_cast<std::size_t>(l) + 1);
    for (int k = 0; k <= l; ++k)
        out[static_cast<std::size_t>(k)] =
            s_lo + (s_hi - s_lo) * k / static_cast<double>(l);
    return out;
}

} // namespace chebex
