#ifndef CHEBEX_CONFIG_HPP
#define CHEBEX_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "chebex/bounds.hpp"
#include "chebex/designs.hpp"

namespace chebex {

// Parsed run configuration; every invariant of the referenced domain types
// is re-checked at parse time with a field-path-specific message.
struct RunConfig {
    struct Smoothness {
        int alpha = 1;
        std::optional<int> m;
        std::optional<int> l;
        std::optional<std::int64_t> n;
        double rho_n = 0.0;
    };
    struct McBlock {
        std::int64_t replicates = 1000;
        std::uint64_t seed = 0;
        std::string test_function = "exp";
    };
    struct OutputBlock {
        std::string format = "json"; // json | csv
        std::string path;            // empty: stdout
    };
    struct DiagnosticsBlock {
        int l_min = 0;
        int l_max = 20;
        int grid = 100000;
    };

    DesignSpace space;
    Smoothness smoothness;
    std::optional<ErrorBudget> budget;
    NoiseModel noise;
    McBlock mc;
    OutputBlock output;
    DiagnosticsBlock diagnostics;
};

// Throws config_error on any violation, naming the offending field.
RunConfig parse_run_config_text(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

} // namespace chebex

#endif
