#ifndef CHEBEX_ERRORS_HPP
#define CHEBEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chebex {

// Bad geometry or degenerate inputs (empty window, coincident knots, ...).
struct invalid_domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A requested budget or tolerance cannot be met.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure (overflow, non-finite intermediate).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace chebex

#endif
