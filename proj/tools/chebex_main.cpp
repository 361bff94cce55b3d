#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chebex/config.hpp"
#include "chebex/mc.hpp"
#include "chebex/polybasis.hpp"

namespace {

using chebex::RunConfig;
using nlohmann::json;

std::string resolve_config_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path))
        return path;
    if (fs::path(path).is_relative()) {
        if (const char* dir = std::getenv("CHEBEX_CONFIG_DIR")) {
            const fs::path candidate = fs::path(dir) / path;
            if (fs::exists(candidate))
                return candidate.string();
        }
    }
    return path; // let the loader report the failure
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output.path, std::ios::binary);
    if (!out)
        throw chebex::config_error("output: cannot open " + cfg.output.path);
    out << text;
}

json space_json(const chebex::DesignSpace& s) {
    return json{{"a", s.a},           {"b", s.b},
                {"s_lo", s.s_lo},     {"s_hi", s.s_hi},
                {"s_star", s.s_star}, {"target", s.target},
                {"d", s.d}};
}

json report_json(const chebex::BoundReport& r) {
    return json{{"m_taylor", r.m_taylor}, {"m_interp", r.m_interp},
                {"lambda", r.lambda},     {"k_factor", r.k_factor},
                {"m_est", r.m_est},       {"total", r.total}};
}

int require_field(const std::optional<int>& v, const char* name) {
    if (!v)
        throw chebex::config_error(std::string("smoothness.") + name +
                                   ": required for this command");
    return *v;
}

chebex::Design design_from_config(const RunConfig& cfg, std::int64_t n) {
    const int l = require_field(cfg.smoothness.l, "l");
    const int m = require_field(cfg.smoothness.m, "m");
    return chebex::build_design(cfg.space, l, m, n);
}

void cmd_design(const RunConfig& cfg) {
    if (!cfg.smoothness.n)
        throw chebex::config_error("smoothness.n: required for design runs");
    const auto design = design_from_config(cfg, *cfg.smoothness.n);
    if (cfg.output.format == "csv") {
        std::string text = "knot,weight,frequency\n";
        for (std::size_t k = 0; k < design.knots.size(); ++k)
            text += json(design.knots[k]).dump() + "," +
                    json(design.weights[k]).dump() + "," +
                    std::to_string(design.frequencies[k]) + "\n";
        emit(cfg, text);
        return;
    }
    json out{{"space", space_json(cfg.space)},
             {"design",
              {{"knots", design.knots},
               {"weights", design.weights},
               {"frequencies", design.frequencies},
               {"total", design.total}}}};
    emit(cfg, out.dump(2) + "\n");
}

void cmd_bounds(const RunConfig& cfg) {
    const bool has_explicit = cfg.smoothness.m && cfg.smoothness.l;
    if (has_explicit == cfg.budget.has_value())
        throw chebex::config_error(
            "bounds: provide exactly one of explicit smoothness (m, l) or a "
            "budget block");
    json out;
    if (has_explicit) {
        const int l = *cfg.smoothness.l;
        const int m = *cfg.smoothness.m;
        const auto design =
            chebex::build_design(cfg.space, l, m,
                                 cfg.smoothness.n.value_or(l + 1));
        const auto report =
            chebex::total_bound(cfg.space, design, cfg.noise, m,
                                cfg.smoothness.alpha, cfg.smoothness.rho_n);
        out = json{{"mode", "explicit"},
                   {"m", m},
                   {"l", l},
                   {"alpha", cfg.smoothness.alpha},
                   {"report", report_json(report)}};
    } else {
        const auto sol = chebex::solve_budget(*cfg.budget, cfg.space, cfg.noise);
        const auto design =
            chebex::build_design(cfg.space, sol.l, sol.m,
                                 std::max<std::int64_t>(sol.n, sol.l + 1));
        const auto report = chebex::total_bound(
            cfg.space, design, cfg.noise, sol.m, cfg.budget->alpha,
            cfg.budget->rho);
        out = json{{"mode", "budget"},
                   {"m", sol.m},
                   {"l", sol.l},
                   {"n", sol.n},
                   {"alpha", cfg.budget->alpha},
                   {"report", report_json(report)}};
    }
    emit(cfg, out.dump(2) + "\n");
}

void cmd_solve(const RunConfig& cfg) {
    if (!cfg.budget)
        throw chebex::config_error("budget: required for solve runs");
    const auto sol = chebex::solve_budget(*cfg.budget, cfg.space, cfg.noise);
    json out{{"m", sol.m},
             {"l", sol.l},
             {"n", sol.n},
             {"n_union", sol.n_union},
             {"lambda", sol.lambda}};
    emit(cfg, out.dump(2) + "\n");
}

void cmd_simulate(const RunConfig& cfg) {
    if (!cfg.budget)
        throw chebex::config_error(
            "budget: required for simulate runs (rho, eta)");
    const int l = require_field(cfg.smoothness.l, "l");
    const int m = require_field(cfg.smoothness.m, "m");
    std::int64_t n;
    if (cfg.smoothness.n) {
        n = *cfg.smoothness.n;
    } else {
        // Size the budget by Prop-2 on the Chebyshev knots for (l, m).
        const auto knots = chebex::chebyshev_knots(l, cfg.space.s_lo,
                                                   cfg.space.s_hi);
        const double lambda = chebex::lambda_factor(
            knots, m, cfg.space.d, cfg.space.s_star, cfg.space.target);
        n = chebex::hoeffding_sample_size(l, lambda, cfg.noise.tau_lo,
                                          cfg.noise.tau_hi, cfg.budget->rho,
                                          cfg.budget->eta)
                .n_star;
    }
    const auto design = chebex::build_design(cfg.space, l, m,
                                             std::max<std::int64_t>(n, l + 1));
    const auto phi = chebex::test_function_by_id(cfg.mc.test_function);
    const auto report = chebex::run_coverage_experiment(
        cfg.space, design, phi, cfg.noise, m, cfg.smoothness.alpha,
        *cfg.budget, cfg.mc.replicates, cfg.mc.seed);
    json out{{"replicates", report.replicates},
             {"exceed_count_est", report.exceed_count_est},
             {"exceed_count_total", report.exceed_count_total},
             {"aposteriori_violations", report.aposteriori_violations},
             {"empirical_rate_est", report.empirical_rate_est},
             {"empirical_rate_total", report.empirical_rate_total},
             {"mean_abs_error", report.mean_abs_error},
             {"bound_value", report.bound_value},
             {"n", design.total},
             {"seed", report.seed}};
    emit(cfg, out.dump(2) + "\n");
}

void cmd_diagnostics(const RunConfig& cfg) {
    const auto& diag = cfg.diagnostics;
    const double s_lo = cfg.space.s_lo;
    const double s_hi = cfg.space.s_hi;
    const double pi = 3.14159265358979323846;
    json rows = json::array();
    std::string csv = "l,cheb_closed_form,cheb_grid_max,cheb_asymptote,"
                      "equid_grid_max,equid_asymptote,sup_check,"
                      "markoff_j1,markoff_j2,markoff_j3\n";
    for (int l = diag.l_min; l <= diag.l_max; ++l) {
        const double closed = chebex::lebesgue_constant_chebyshev(l);
        chebex::LagrangeBasis cheb(chebex::chebyshev_knots(l, s_lo, s_hi));
        const double cheb_max =
            chebex::lebesgue_grid_max(cheb, s_lo, s_hi, diag.grid);
        const double asym = 2.0 / pi * std::log(static_cast<double>(l + 1));
        double equid_max = 1.0;
        if (l >= 1) {
            chebex::LagrangeBasis equid(
                chebex::equidistant_knots(l, s_lo, s_hi));
            equid_max = chebex::lebesgue_grid_max(equid, s_lo, s_hi, diag.grid);
        }
        const json equid_asym =
            l >= 2 ? json(chebex::equidistant_lebesgue_asymptote(l))
                   : json(nullptr);
        const double sup_check =
            chebex::elementary_lagrange_sup_check(l, diag.grid);
        double markoff[3] = {0.0, 0.0, 0.0};
        for (int j = 1; j <= 3; ++j)
            markoff[j - 1] = chebex::markoff_bound(l, j, s_lo, s_hi, pi);
        rows.push_back(json{{"l", l},
                            {"cheb_closed_form", closed},
                            {"cheb_grid_max", cheb_max},
                            {"cheb_asymptote", asym},
                            {"equid_grid_max", equid_max},
                            {"equid_asymptote", equid_asym},
                            {"sup_check", sup_check},
                            {"markoff_j1", markoff[0]},
                            {"markoff_j2", markoff[1]},
                            {"markoff_j3", markoff[2]}});
        csv += std::to_string(l) + "," + json(closed).dump() + "," +
               json(cheb_max).dump() + "," + json(asym).dump() + "," +
               json(equid_max).dump() + "," +
               (l >= 2 ? equid_asym.dump() : std::string()) + "," +
               json(sup_check).dump() + "," + json(markoff[0]).dump() + "," +
               json(markoff[1]).dump() + "," + json(markoff[2]).dump() + "\n";
    }
    if (cfg.output.format == "csv") {
        emit(cfg, csv);
        return;
    }
    json out{{"window", {{"s_lo", s_lo}, {"s_hi", s_hi}}},
             {"grid", diag.grid},
             {"rows", rows}};
    emit(cfg, out.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal interpolation/extrapolation designs for analytic "
                 "functions observed with noise"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::int64_t> seed_override;
    std::optional<std::string> format_override;
    std::optional<std::string> out_override;

    const char* names[] = {"design", "bounds", "solve", "simulate",
                           "diagnostics"};
    const char* descr[] = {
        "Construct the Chebyshev-knot design with weights and frequencies",
        "Compute the three-term extrapolation error bound",
        "Invert the error budget into (m, l, n)",
        "Run the seeded Monte Carlo coverage experiment",
        "Lebesgue-constant and Markoff-bound tables"};
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(names[i], descr[i]);
        sub->add_option("--config", config_path, "Path to the JSON run config")
            ->required();
        sub->add_option("--seed", seed_override, "Override mc.seed");
        sub->add_option("--format", format_override, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_override, "Write the report here");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg =
            chebex::load_run_config(resolve_config_path(config_path));
        if (seed_override) {
            if (*seed_override < 0)
                throw chebex::config_error("--seed: must be >= 0");
            cfg.mc.seed = static_cast<std::uint64_t>(*seed_override);
        }
        if (format_override)
            cfg.output.format = *format_override;
        if (out_override)
            cfg.output.path = *out_override;

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "design")
            cmd_design(cfg);
        else if (cmd == "bounds")
            cmd_bounds(cfg);
        else if (cmd == "solve")
            cmd_solve(cfg);
        else if (cmd == "simulate")
            cmd_simulate(cfg);
        else
            cmd_diagnostics(cfg);
    } catch (const chebex::config_error& e) {
        std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const chebex::invalid_domain_error& e) {
        std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const chebex::infeasible_error& e) {
        std::cerr << json{{"error", "infeasible"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "numerical"}, {"message", e.what()}}.dump()
                  << "\n";
        return 4;
    }
    return 0;
}
