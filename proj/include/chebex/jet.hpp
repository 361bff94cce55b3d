#ifndef CHEBEX_JET_HPP
#define CHEBEX_JET_HPP

#include <cstddef>
#include <vector>

#include "chebex/errors.hpp"

namespace chebex {

// Truncated Taylor expansion of a function at a point: coefficient j is
// f^(j)(center)/j!. Immutable after construction.
class Jet {
  public:
    Jet(double center, std::vector<double> coefficients)
        : center_(center), coeffs_(std::move(coefficients)) {
        if (coeffs_.empty())
            throw invalid_domain_error("Jet: at least one coefficient required");
    }

    static Jet constant(double center, double value, int order) {
        std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
        c[0] = value;
        return Jet(center, std::move(c));
    }

    double center() const { return center_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    double coefficient(int j) const {
        return coeffs_[static_cast<std::size_t>(j)];
    }

    double value() const { return coeffs_[0]; }

    // f^(j)(center) = c_j * j!
    double derivative(int j) const {
        double fact = 1.0;
        for (int t = 2; t <= j; ++t)
            fact *= t;
        return coeffs_[static_cast<std::size_t>(j)] * fact;
    }

    const std::vector<double>& coefficients() const { return coeffs_; }

    // In-place product with the linear factor a0 + a1*(v - center),
    // truncated at the jet order.
    void multiply_linear(double a0, double a1) {
        for (std::size_t t = coeffs_.size() - 1; t >= 1; --t)
            coeffs_[t] = a0 * coeffs_[t] + a1 * coeffs_[t - 1];
        coeffs_[0] *= a0;
    }

  private:
    double center_;
    std::vector<double> coeffs_;
};

} // namespace chebex

#endif
