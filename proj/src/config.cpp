#include "chebex/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chebex {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw config_error(path + ": " + what);
}

const json* find(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const std::string& block,
                  const std::string& key, std::optional<double> fallback = {}) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback)
            return *fallback;
        fail(block + "." + key, "required number missing");
    }
    if (!v->is_number())
        fail(block + "." + key, "expected a number");
    return v->get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& block,
                         const std::string& key,
                         std::optional<std::int64_t> fallback = {}) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback)
            return *fallback;
        fail(block + "." + key, "required integer missing");
    }
    if (!v->is_number_integer())
        fail(block + "." + key, "expected an integer");
    return v->get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& block,
                       const std::string& key, const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v)
        return fallback;
    if (!v->is_string())
        fail(block + "." + key, "expected a string");
    return v->get<std::string>();
}

DesignSpace parse_space(const json& j) {
    const json* block = find(j, "space");
    if (!block || !block->is_object())
        fail("space", "required object missing");
    DesignSpace space;
    space.a = get_number(*block, "space", "a");
    space.b = get_number(*block, "space", "b");
    space.s_lo = get_number(*block, "space", "s_lo");
    space.s_hi = get_number(*block, "space", "s_hi");
    space.s_star = get_number(*block, "space", "s_star");
    space.target = get_number(*block, "space", "target");
    space.d = static_cast<int>(get_integer(*block, "space", "d", 0));
    try {
        space.validate();
    } catch (const invalid_domain_error& e) {
        fail("space", e.what());
    }
    return space;
}

RunConfig::Smoothness parse_smoothness(const json& j) {
    RunConfig::Smoothness s;
    const json* block = find(j, "smoothness");
    if (!block)
        return s;
    if (!block->is_object())
        fail("smoothness", "expected an object");
    s.alpha = static_cast<int>(get_integer(*block, "smoothness", "alpha", 1));
    if (s.alpha < 1)
        fail("smoothness.alpha", "must be >= 1");
    if (find(*block, "m")) {
        s.m = static_cast<int>(get_integer(*block, "smoothness", "m"));
        if (*s.m < 1)
            fail("smoothness.m", "must be >= 1");
    }
    if (find(*block, "l")) {
        s.l = static_cast<int>(get_integer(*block, "smoothness", "l"));
        if (*s.l < 0)
            fail("smoothness.l", "must be >= 0");
    }
    if (find(*block, "n")) {
        s.n = get_integer(*block, "smoothness", "n");
        if (*s.n < 1)
            fail("smoothness.n", "must be >= 1");
    }
    s.rho_n = get_number(*block, "smoothness", "rho_n", 0.0);
    if (s.rho_n < 0.0)
        fail("smoothness.rho_n", "must be >= 0");
    return s;
}

std::optional<ErrorBudget> parse_budget(const json& j) {
    const json* block = find(j, "budget");
    if (!block)
        return std::nullopt;
    if (!block->is_object())
        fail("budget", "expected an object");
    ErrorBudget b;
    b.rho_m = get_number(*block, "budget", "rho_m", b.rho_m);
    b.rho_l = get_number(*block, "budget", "rho_l", b.rho_l);
    b.rho = get_number(*block, "budget", "rho", b.rho);
    b.rho_n = get_number(*block, "budget", "rho_n", b.rho_n);
    b.eta = get_number(*block, "budget", "eta", b.eta);
    b.omega = get_number(*block, "budget", "omega", b.omega);
    b.alpha = static_cast<int>(get_integer(*block, "budget", "alpha", b.alpha));
    try {
        b.validate();
    } catch (const invalid_domain_error& e) {
        fail("budget", e.what());
    }
    return b;
}

NoiseModel parse_noise(const json& j) {
    NoiseModel noise;
    const json* block = find(j, "noise");
    if (!block)
        return noise;
    if (!block->is_object())
        fail("noise", "expected an object");
    const std::string kind = get_string(*block, "noise", "kind", "bounded");
    if (kind == "bounded")
        noise.kind = NoiseModel::Kind::bounded;
    else if (kind == "unbounded")
        noise.kind = NoiseModel::Kind::unbounded;
    else
        fail("noise.kind", "expected \"bounded\" or \"unbounded\"");
    noise.sigma = get_number(*block, "noise", "sigma", noise.sigma);
    noise.mean_z = get_number(*block, "noise", "mean_z", noise.mean_z);
    noise.var_z = get_number(*block, "noise", "var_z", noise.var_z);
    noise.tau_lo = get_number(*block, "noise", "tau_lo", noise.tau_lo);
    noise.tau_hi = get_number(*block, "noise", "tau_hi", noise.tau_hi);
    try {
        noise.validate();
    } catch (const invalid_domain_error& e) {
        fail("noise", e.what());
    }
    return noise;
}

RunConfig::McBlock parse_mc(const json& j) {
    RunConfig::McBlock mc;
    const json* block = find(j, "mc");
    if (!block)
        return mc;
    if (!block->is_object())
        fail("mc", "expected an object");
    mc.replicates = get_integer(*block, "mc", "replicates", mc.replicates);
    if (mc.replicates < 1)
        fail("mc.replicates", "must be >= 1");
    const std::int64_t seed = get_integer(*block, "mc", "seed", 0);
    if (seed < 0)
        fail("mc.seed", "must be >= 0");
    mc.seed = static_cast<std::uint64_t>(seed);
    mc.test_function =
        get_string(*block, "mc", "test_function", mc.test_function);
    return mc;
}

RunConfig::OutputBlock parse_output(const json& j) {
    RunConfig::OutputBlock out;
    const json* block = find(j, "output");
    if (!block)
        return out;
    if (!block->is_object())
        fail("output", "expected an object");
    out.format = get_string(*block, "output", "format", out.format);
    if (out.format != "json" && out.format != "csv")
        fail("output.format", "expected \"json\" or \"csv\"");
    out.path = get_string(*block, "output", "path", "");
    return out;
}

RunConfig::DiagnosticsBlock parse_diagnostics(const json& j) {
    RunConfig::DiagnosticsBlock d;
    const json* block = find(j, "diagnostics");
    if (!block)
        return d;
    if (!block->is_object())
        fail("diagnostics", "expected an object");
    d.l_min = static_cast<int>(get_integer(*block, "diagnostics", "l_min", 0));
    d.l_max = static_cast<int>(get_integer(*block, "diagnostics", "l_max", 20));
    d.grid =
        static_cast<int>(get_integer(*block, "diagnostics", "grid", 100000));
    if (d.l_min < 0)
        fail("diagnostics.l_min", "must be >= 0");
    if (d.l_max < d.l_min)
        fail("diagnostics.l_max", "must be >= l_min");
    if (d.grid < 2)
        fail("diagnostics.grid", "must be >= 2");
    return d;
}

} // namespace

RunConfig parse_run_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw config_error("config: top level must be an object");
    RunConfig cfg;
    cfg.space = parse_space(j);
    cfg.smoothness = parse_smoothness(j);
    cfg.budget = parse_budget(j);
    cfg.noise = parse_noise(j);
    cfg.mc = parse_mc(j);
    cfg.output = parse_output(j);
    cfg.diagnostics = parse_diagnostics(j);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config_text(buf.str());
}

} // namespace chebex
