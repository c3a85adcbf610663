// Command-line front end: design | simulate | sweep | check.
//
// Exit codes: 0 success, 1 usage/config error, 2 domain error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "igo/audit.hpp"
#include "igo/bifurcation.hpp"
#include "igo/cycle.hpp"
#include "igo/design.hpp"
#include "igo/errors.hpp"
#include "igo/json_io.hpp"
#include "igo/model.hpp"
#include "igo/sim.hpp"
#include "igo/stability.hpp"
#include "igo/svg.hpp"

namespace fs = std::filesystem;
using igo::json;

namespace {

json load_config(const std::string& path, const std::string& expected_command) {
    std::ifstream in(path);
    if (!in) throw igo::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw igo::ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
        throw igo::ConfigError("config needs a top-level string field \"command\"");
    if (j["command"] != expected_command)
        throw igo::ConfigError("config command \"" + j["command"].get<std::string>() +
                               "\" does not match subcommand \"" + expected_command + "\"");
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw igo::Error("cannot write " + path.string());
    out << content;
}

igo::CycleSpec cycle_from_json(const json& j) {
    igo::reject_unknown_keys(j, {"lambda", "T"}, "cycle");
    try {
        return igo::CycleSpec(igo::require_number(j, "lambda", "cycle"),
                              igo::require_number(j, "T", "cycle"));
    } catch (const igo::ConfigError&) {
        throw;
    } catch (const igo::Error& e) {
        throw igo::ConfigError(std::string("cycle: ") + e.what());
    }
}

int run_design(const json& cfg, const fs::path& outdir) {
    igo::reject_unknown_keys(cfg, {"command", "plant", "cycle", "options"}, "design config");
    if (!cfg.contains("plant")) throw igo::ConfigError("design config: missing \"plant\"");
    if (!cfg.contains("cycle")) throw igo::ConfigError("design config: missing \"cycle\"");
    if (!cfg.contains("options")) throw igo::ConfigError("design config: missing \"options\"");

    igo::PlantParams plant = igo::plant_from_json(cfg["plant"]);
    igo::CycleSpec spec = cycle_from_json(cfg["cycle"]);

    const json& jo = cfg["options"];
    igo::reject_unknown_keys(jo,
                             {"p_phi", "p_f", "k2", "k4", "slopes", "k1", "k3", "root_choice",
                              "require_stable", "search"},
                             "options");
    igo::DesignOptions opt;
    opt.k2 = igo::require_number(jo, "k2", "options");
    opt.k4 = igo::require_number(jo, "k4", "options");
    if (jo.contains("p_phi")) opt.p_phi = igo::require_number(jo, "p_phi", "options");
    if (jo.contains("p_f")) opt.p_f = igo::require_number(jo, "p_f", "options");
    if (jo.contains("slopes")) {
        igo::reject_unknown_keys(jo["slopes"], {"f_prime", "phi_prime"}, "options.slopes");
        opt.slopes = igo::Slopes{igo::require_number(jo["slopes"], "f_prime", "options.slopes"),
                                 igo::require_number(jo["slopes"], "phi_prime", "options.slopes")};
    }
    if (jo.contains("k1")) opt.k1 = igo::require_number(jo, "k1", "options");
    if (jo.contains("k3")) opt.k3 = igo::require_number(jo, "k3", "options");
    if (jo.contains("require_stable")) {
        if (!jo["require_stable"].is_boolean())
            throw igo::ConfigError("options.require_stable must be a boolean");
        opt.require_stable = jo["require_stable"].get<bool>();
    }
    if (jo.contains("root_choice")) {
        std::string rc = jo["root_choice"].get<std::string>();
        if (rc == "larger_h")
            opt.root_choice = igo::RootChoice::LargerH;
        else if (rc == "smaller_h")
            opt.root_choice = igo::RootChoice::SmallerH;
        else
            throw igo::ConfigError("options.root_choice must be larger_h or smaller_h");
    }
    if (jo.contains("search")) {
        const json& js = jo["search"];
        igo::reject_unknown_keys(js, {"f_lo", "f_hi", "n_f", "p_lo", "p_hi", "n_p"},
                                 "options.search");
        igo::SlopeSearchOptions s;
        if (js.contains("f_lo")) s.f_lo = igo::require_number(js, "f_lo", "search");
        if (js.contains("f_hi")) s.f_hi = igo::require_number(js, "f_hi", "search");
        if (js.contains("p_lo")) s.p_lo = igo::require_number(js, "p_lo", "search");
        if (js.contains("p_hi")) s.p_hi = igo::require_number(js, "p_hi", "search");
        if (js.contains("n_f")) s.n_f = static_cast<int>(igo::require_number(js, "n_f", "search"));
        if (js.contains("n_p")) s.n_p = static_cast<int>(igo::require_number(js, "n_p", "search"));
        opt.search = s;
    }

    igo::DesignResult result = igo::design(plant, spec, opt);

    write_file(outdir / "design_report.json", igo::to_json(result).dump(2) + "\n");

    std::printf("design: realized cycle lambda = %.10g, T = %.10g at z0 = %.10g\n",
                result.cycle.lambda, result.cycle.T, result.cycle.z0);
    std::printf("  slopes F' = %.10g, Phi' = %.10g\n", result.slopes.f_prime,
                result.slopes.phi_prime);
    std::printf("  h_phi = %.10g, h_f = %.10g, k1 = %.10g, k3 = %.10g\n", result.model.hill.h_phi,
                result.model.hill.h_f, result.model.hill.k1, result.model.hill.k3);
    std::printf("  stability: %s (r0 = %.6g, tau = %.6g)\n",
                result.stability.is_schur ? "Schur stable" : "NOT stable", result.stability.r0,
                result.stability.tau);
    for (const auto& w : result.warnings) std::printf("  warning: %s\n", w.c_str());
    std::printf("  wrote %s\n", (outdir / "design_report.json").string().c_str());
    return 0;
}

int run_simulate(const json& cfg, const fs::path& outdir, bool plots) {
    igo::reject_unknown_keys(
        cfg, {"command", "model", "model_from", "x0", "perturb", "n_impulses", "t_end", "dt"},
        "simulate config");

    std::optional<igo::IgoModel> model;
    if (cfg.contains("model")) {
        model = igo::model_from_json(cfg["model"]);
    } else if (cfg.contains("model_from")) {
        std::ifstream in(cfg["model_from"].get<std::string>());
        if (!in)
            throw igo::ConfigError("cannot open model_from file: " +
                                   cfg["model_from"].get<std::string>());
        json report;
        try {
            in >> report;
        } catch (const std::exception& e) {
            throw igo::ConfigError("model_from is not valid JSON: " + std::string(e.what()));
        }
        if (!report.contains("model"))
            throw igo::ConfigError("model_from file has no \"model\" field");
        model = igo::model_from_json(report["model"]);
    } else {
        throw igo::ConfigError("simulate config needs \"model\" or \"model_from\"");
    }

    igo::CycleSolution cycle = igo::solve_one_cycle(*model);

    igo::StateVec x0 = cycle.X;
    if (cfg.contains("x0")) {
        const json& jx = cfg["x0"];
        if (!jx.is_array() || jx.size() != 3)
            throw igo::ConfigError("x0 must be an array of three numbers");
        x0 = igo::StateVec{jx[0].get<double>(), jx[1].get<double>(), jx[2].get<double>()};
    } else if (cfg.contains("perturb")) {
        x0 = cfg["perturb"].get<double>() * cycle.X;
    }

    int n_impulses = cfg.value("n_impulses", 100);
    if (n_impulses < 1) throw igo::ConfigError("n_impulses must be >= 1");
    double t_end = cfg.value("t_end", 20.0 * cycle.T);
    double dt = cfg.value("dt", cycle.T / 100.0);

    auto events = igo::simulate_impulses(*model, x0, n_impulses);
    auto samples = igo::dense_trajectory(*model, x0, t_end, dt);

    {
        std::ofstream os(outdir / "events.csv", std::ios::binary);
        igo::write_events_csv(os, events);
    }
    {
        std::ofstream os(outdir / "trajectory.csv", std::ios::binary);
        igo::write_trajectory_csv(os, samples);
    }

    // Convergence assessment of the weight sequence against the model's own
    // 1-cycle weight.
    int head = std::min<int>(10, n_impulses);
    double early = 0.0, late = 0.0;
    for (int i = 0; i < head; ++i) early += std::abs(events[i].lambda - cycle.lambda);
    for (int i = n_impulses - head; i < n_impulses; ++i)
        late += std::abs(events[i].lambda - cycle.lambda);
    early /= head;
    late /= head;
    bool diverging = late > 10.0 * (early + 1e-15) || !std::isfinite(late);

    std::printf("simulate: %d impulses, final weight %.10g (cycle weight %.10g)\n", n_impulses,
                events.back().lambda, cycle.lambda);
    std::printf("  weight deviation: first-%d mean %.3e, last-%d mean %.3e -> %s\n", head, early,
                head, late, diverging ? "DIVERGING from the 1-cycle" : "converging/stationary");
    std::printf("  wrote %s and %s\n", (outdir / "events.csv").string().c_str(),
                (outdir / "trajectory.csv").string().c_str());

    if (plots) {
        std::vector<std::pair<double, double>> phase;
        phase.reserve(samples.size());
        for (const auto& s : samples)
            phase.emplace_back(s.x[1] + 0.35 * s.x[0], s.x[2] + 0.35 * s.x[0]);
        std::ofstream p1(outdir / "phase_x1x2x3.svg", std::ios::binary);
        igo::write_polyline_svg(p1, phase, "x2 + 0.35 x1", "x3 + 0.35 x1");

        std::vector<std::pair<double, double>> lam;
        lam.reserve(events.size());
        for (const auto& ev : events) lam.emplace_back(ev.n, ev.lambda);
        std::ofstream p2(outdir / "lambda_sequence.svg", std::ios::binary);
        igo::write_polyline_svg(p2, lam, "impulse index", "weight");
        std::printf("  wrote phase_x1x2x3.svg and lambda_sequence.svg\n");
    }
    return 0;
}

int run_sweep(const json& cfg, const fs::path& outdir) {
    igo::reject_unknown_keys(
        cfg, {"command", "mode", "base", "plant", "cycle", "range", "n_points", "k2_over_k4"},
        "sweep config");
    if (!cfg.contains("mode")) throw igo::ConfigError("sweep config: missing \"mode\"");
    std::string mode = cfg["mode"].get<std::string>();
    if (!cfg.contains("cycle")) throw igo::ConfigError("sweep config: missing \"cycle\"");
    igo::CycleSpec spec = cycle_from_json(cfg["cycle"]);

    if (!cfg.contains("range") || !cfg["range"].is_array() || cfg["range"].size() != 2)
        throw igo::ConfigError("sweep config: \"range\" must be [lo, hi]");
    double lo = cfg["range"][0].get<double>();
    double hi = cfg["range"][1].get<double>();
    int n_points = cfg.value("n_points", 200);
    if (!(hi > lo)) throw igo::ConfigError("sweep range is empty (needs hi > lo)");
    if (n_points < 2) throw igo::ConfigError("sweep needs n_points >= 2");

    std::vector<igo::SweepRecord> records;
    igo::PointEvaluator eval;

    if (mode == "a3") {
        if (!cfg.contains("base")) throw igo::ConfigError("a3 sweep: missing \"base\"");
        const json& jb = cfg["base"];
        igo::reject_unknown_keys(jb, {"a1", "a2", "g1", "g2", "k1", "k2", "k3", "k4", "p"},
                                 "base");
        igo::SweepBase base{
            igo::require_number(jb, "a1", "base"), igo::require_number(jb, "a2", "base"),
            igo::require_number(jb, "g1", "base"), igo::require_number(jb, "g2", "base"),
            igo::require_number(jb, "k1", "base"), igo::require_number(jb, "k2", "base"),
            igo::require_number(jb, "k3", "base"), igo::require_number(jb, "k4", "base"),
            igo::require_number(jb, "p", "base")};
        records = igo::sweep_a3(base, spec, lo, hi, n_points);
        eval = [base, spec](double a3) { return igo::evaluate_a3_point(a3, base, spec); };
    } else if (mode == "slopes") {
        if (!cfg.contains("plant")) throw igo::ConfigError("slope sweep: missing \"plant\"");
        igo::PlantParams plant = igo::plant_from_json(cfg["plant"]);
        double ratio = igo::require_number(cfg, "k2_over_k4", "sweep config");
        records = igo::sweep_slopes(plant, spec, lo, hi, ratio, n_points);
        eval = [plant, spec, ratio](double fp) {
            return igo::evaluate_slope_point(fp, plant, spec, ratio);
        };
    } else {
        throw igo::ConfigError("sweep mode must be \"a3\" or \"slopes\"");
    }

    std::size_t failed = 0;
    for (const auto& r : records)
        if (!r.error.empty() && r.error.rfind("warn:", 0) != 0) ++failed;
    if (failed == records.size()) throw igo::Error("every sweep point failed");

    auto crossings = igo::detect_crossings(records, eval);

    {
        std::ofstream os(outdir / "sweep.csv", std::ios::binary);
        igo::write_sweep_csv(os, records);
    }
    {
        json jc = json::array();
        for (const auto& c : crossings) jc.push_back(igo::to_json(c));
        write_file(outdir / "bifurcations.json", jc.dump(2) + "\n");
    }

    std::printf("sweep (%s): %zu points, %zu failed, %zu unit-circle crossing(s)\n", mode.c_str(),
                records.size(), failed, crossings.size());
    for (const auto& c : crossings)
        std::printf("  %s at param = %.10g (multiplier %.8g)\n", c.type.c_str(), c.param,
                    c.critical_multiplier);
    std::printf("  wrote sweep.csv and bifurcations.json\n");
    return 0;
}

int run_check() {
    auto rows = igo::paper_consistency_audit();
    igo::print_audit_table(std::cout, rows);
    std::size_t mismatches = 0;
    for (const auto& r : rows)
        if (!r.match) ++mismatches;
    std::printf("%zu rows, %zu mismatches (informational; see notes above)\n", rows.size(),
                mismatches);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impulsive Goodwin oscillator design and analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    bool plots = false;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* c = cmd->add_option("--config", config_path, "JSON run configuration");
        if (config_required) c->required();
        cmd->add_option("--out", out_dir, "output directory (created if missing)");
        cmd->add_flag("--plots", plots, "emit SVG plots in addition to CSV");
        cmd->add_option("--seed", seed, "seed recorded with the run (outputs are deterministic)");
    };

    CLI::App* cmd_design = app.add_subcommand("design", "calibrate modulation functions");
    CLI::App* cmd_simulate = app.add_subcommand("simulate", "run the hybrid dynamics");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "parameter continuation and crossings");
    CLI::App* cmd_check = app.add_subcommand("check", "reference-example consistency audit");
    add_common(cmd_design, true);
    add_common(cmd_simulate, true);
    add_common(cmd_sweep, true);
    add_common(cmd_check, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        fs::path outdir(out_dir);
        fs::create_directories(outdir);
        if (cmd_design->parsed()) return run_design(load_config(config_path, "design"), outdir);
        if (cmd_simulate->parsed())
            return run_simulate(load_config(config_path, "simulate"), outdir, plots);
        if (cmd_sweep->parsed()) return run_sweep(load_config(config_path, "sweep"), outdir);
        if (cmd_check->parsed()) {
            if (!config_path.empty()) load_config(config_path, "check");
            return run_check();
        }
    } catch (const igo::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const igo::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
