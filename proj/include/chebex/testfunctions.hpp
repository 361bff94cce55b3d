#ifndef CHEBEX_TESTFUNCTIONS_HPP
#define CHEBEX_TESTFUNCTIONS_HPP

#include <functional>
#include <string>
#include <vector>

namespace chebex {

// An analytic function with closed-form derivatives and a sup-bound oracle,
// used as the ground truth in simulations.
struct TestFunction {
    std::string id;
    std::function<double(double)> value;
    // phi^(j)(v); j = 0 must agree with `value`.
    std::function<double(int, double)> derivative;
    // sup over [lo, hi] of |phi^(j)|.
    std::function<double(int, double, double)> sup_abs_derivative;
    // Optional extended-precision phi^(j); lets sup-error studies resolve
    // interpolation residuals below the double rounding floor.
    std::function<long double(int, long double)> derivative_ext;
};

TestFunction make_exp();
TestFunction make_sin();
// coeffs[j] multiplies v^j.
TestFunction make_polynomial(std::vector<double> coeffs);
// 1/(1+25 v^2); sup bounds from a dense grid.
TestFunction make_runge();

// Lookup by id: "exp", "sin", "runge", or "poly:c0,c1,...".
TestFunction test_function_by_id(const std::string& id);

} // namespace chebex

#endif
