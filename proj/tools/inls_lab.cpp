// Command-line front end: ground | evolve | classify | pairs | sweep.
//
// Exit codes: 0 success; 1 config/usage error; 2 ground-state solver did not
// converge; 3 evolution ended in detected blow-up; 4 evolution unresolved;
// 5 pair verification failures.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inlslab/config.hpp"
#include "inlslab/dynamics.hpp"
#include "inlslab/exponents.hpp"
#include "inlslab/groundstate.hpp"
#include "inlslab/sweep.hpp"
#include "inlslab/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace inls;

namespace {

json meta_json(const groundstate::SolverMeta& m) {
    json j;
    j["method"] = m.method;
    j["iterations"] = m.iterations;
    j["newton_iterations"] = m.newton_iterations;
    j["residual"] = m.residual;
    if (m.fitted_scale != 0.0) {
        j["printed_scale"] = m.printed_scale;
        j["fitted_scale"] = m.fitted_scale;
        j["fitted_amplitude"] = m.fitted_amplitude;
    }
    return j;
}

int cmd_ground(const cli::RunConfig& cfg, const std::string& outdir) {
    fs::create_directories(outdir);
    groundstate::GroundState gs;
    try {
        gs = groundstate::solve_ground_state(cfg.model, cfg.solver);
    } catch (const groundstate::NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 2;
    }
    radial::save_field(gs.profile, (fs::path(outdir) / "ground_profile.txt").string());
    auto [r1, r2] = groundstate::pohozaev_residuals(gs, cfg.model);
    json j;
    j["mass"] = gs.mass;
    j["kinetic"] = gs.kinetic;
    j["potential"] = gs.potential;
    j["energy"] = gs.energy;
    j["sharp_constant"] = gs.sharp_constant;
    j["pohozaev_residuals"] = {r1, r2};
    j["solver_meta"] = meta_json(gs.solver_meta);
    try {
        auto th = groundstate::thresholds(gs, cfg.model);
        json t;
        t["mass_crit_threshold"] = th.mass_crit_threshold;
        if (th.intercritical) {
            t["s_c"] = th.s_c;
            t["me_product"] = th.me_product;
            t["grad_product"] = th.grad_product;
            t["y_star"] = th.y_star;
        }
        j["thresholds"] = t;
    } catch (const groundstate::RegimeMismatch&) {
    }
    std::ofstream os(fs::path(outdir) / "ground_summary.json");
    os << j.dump(2) << "\n";
    std::cout << "ground state: mass " << cli::fmt17(gs.mass) << ", residual "
              << cli::fmt17(gs.solver_meta.residual) << "\n";
    return 0;
}

int status_code(dynamics::Status st) {
    switch (st) {
        case dynamics::Status::ReachedTEnd: return 0;
        case dynamics::Status::BlowupDetected: return 3;
        default: return 4;
    }
}

int cmd_evolve(const cli::RunConfig& cfg, const std::string& outdir) {
    fs::create_directories(outdir);
    auto grid = radial::RadialGrid::make(cfg.model.dim, cfg.grid.size, cfg.grid.r_max);
    auto u0 = cli::make_initial_data(cfg, grid);
    auto run = dynamics::evolve(u0, cfg.model, cfg.evolution);
    cli::write_trajectory_csv((fs::path(outdir) / "trajectory.csv").string(), run.trajectory);
    for (const auto& [t, state] : run.states) {
        radial::save_field(state,
                           (fs::path(outdir) / ("state_t" + cli::fmt_shortest(t) + ".txt"))
                               .string());
    }
    json j;
    j["status"] = dynamics::to_string(run.status);
    j["t_final"] = run.t_final;
    const auto& first = run.trajectory.front();
    const auto& last = run.trajectory.back();
    j["mass_drift"] = std::abs(last.mass - first.mass) / first.mass;
    j["energy_drift"] =
        first.energy != 0 ? std::abs(last.energy - first.energy) / std::abs(first.energy) : 0.0;
    try {
        auto audit = dynamics::virial_audit(run.trajectory, cfg.model);
        j["virial_audit"] = {{"samples", audit.samples},
                             {"max_rel_dev_vs_recorded", audit.max_rel_dev_vs_recorded},
                             {"max_rel_dev_vs_identity", audit.max_rel_dev_vs_identity}};
    } catch (const dynamics::InsufficientSamples&) {
    }
    if (cfg.scattering && run.status == dynamics::Status::ReachedTEnd &&
        run.states.size() >= 2) {
        json incr = json::array();
        for (const auto& [t, c] : dynamics::scattering_diagnostic(run, cfg.model))
            incr.push_back({{"t", t}, {"increment", c}});
        j["scattering_increments"] = incr;
    }
    std::ofstream os(fs::path(outdir) / "summary.json");
    os << j.dump(2) << "\n";
    std::cout << "evolve: " << dynamics::to_string(run.status) << " at t="
              << cli::fmt_shortest(run.t_final) << "\n";
    return status_code(run.status);
}

int cmd_classify(const cli::RunConfig& cfg, const std::string& outdir, bool with_evolution) {
    fs::create_directories(outdir);
    auto grid = radial::RadialGrid::make(cfg.model.dim, cfg.grid.size, cfg.grid.r_max);
    auto u0 = cli::make_initial_data(cfg, grid);
    std::string prediction = "NoPrediction";
    const auto regime = derive_indices(cfg.model).regime;
    if (regime == Regime::MassCritical || regime == Regime::Intercritical) {
        auto gs = groundstate::solve_ground_state(cfg.model, cfg.solver);
        auto th = groundstate::thresholds(gs, cfg.model);
        prediction = groundstate::to_string(
            groundstate::classify_initial_data(u0, th, cfg.model));
    }
    json j;
    j["prediction"] = prediction;
    std::cout << "prediction: " << prediction << "\n";
    if (with_evolution) {
        auto run = dynamics::evolve(u0, cfg.model, cfg.evolution);
        const std::string observed = dynamics::to_string(run.status);
        const bool agree =
            (prediction.rfind("Global", 0) == 0 && run.status == dynamics::Status::ReachedTEnd) ||
            (prediction.rfind("Blowup", 0) == 0 &&
             run.status == dynamics::Status::BlowupDetected) ||
            prediction == "NoPrediction";
        j["observed"] = observed;
        j["agree"] = agree;
        std::cout << "observed: " << observed << (agree ? " (agrees)" : " (disagrees)") << "\n";
    }
    std::ofstream os(fs::path(outdir) / "classify.json");
    os << j.dump(2) << "\n";
    return 0;
}

int cmd_pairs(const cli::RunConfig& cfg, const std::string& outdir) {
    fs::create_directories(outdir);
    auto report = exponents::verify_all(cfg.model, cfg.pairs.theta, cfg.pairs.eps);
    json checks = json::array();
    int failed = 0;
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass) ++failed;
    }
    json j;
    j["model"] = {{"dim", cfg.model.dim},
                  {"a", cfg.model.a},
                  {"b", cfg.model.b},
                  {"alpha", cfg.model.alpha}};
    j["theta"] = cfg.pairs.theta;
    j["eps"] = cfg.pairs.eps;
    j["all_pass"] = report.all_pass;
    j["checks"] = checks;
    std::ofstream os(fs::path(outdir) / "pairs_report.json");
    os << j.dump(2) << "\n";
    std::cout << "pairs: " << (report.checks.size() - failed) << "/" << report.checks.size()
              << " checks passed\n";
    return report.all_pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the inhomogeneous NLS with inverse-square potential"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    int workers = 0;
    bool resume = false, with_evolution = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration file")->required();
        sub->add_option("--output", output_dir, "output directory (defaults to [output] dir)");
    };
    auto* ground = app.add_subcommand("ground", "compute the ground state");
    add_common(ground);
    auto* evolve = app.add_subcommand("evolve", "evolve radial initial data");
    add_common(evolve);
    auto* classify = app.add_subcommand("classify", "classify initial data against thresholds");
    add_common(classify);
    classify->add_flag("--evolve", with_evolution, "also evolve and report agreement");
    auto* pairs = app.add_subcommand("pairs", "verify admissible-pair constructions");
    add_common(pairs);
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with phase.csv output");
    add_common(sweep);
    sweep->add_option("--workers", workers, "worker threads");
    sweep->add_flag("--resume", resume, "skip completed run directories");

    CLI11_PARSE(app, argc, argv);

    try {
        cli::RunConfig cfg = cli::parse_config_file(config_path);
        cfg.model.validate();
        const std::string out = output_dir.empty() ? cfg.output_dir : output_dir;
        if (ground->parsed()) return cmd_ground(cfg, out);
        if (evolve->parsed()) return cmd_evolve(cfg, out);
        if (classify->parsed()) return cmd_classify(cfg, out, with_evolution);
        if (pairs->parsed()) return cmd_pairs(cfg, out);
        if (sweep->parsed()) {
            if (workers > 0) cfg.sweep.workers = workers;
            if (resume) cfg.sweep.resume = true;
            return cli::run_sweep(cfg, out);
        }
    } catch (const groundstate::NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
