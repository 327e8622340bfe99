#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "kato/corrector/corrector.hpp"
#include "kato/diagnostics/stability.hpp"
#include "kato/dynamics/euler.hpp"
#include "kato/ensemble/audit.hpp"
#include "kato/ensemble/ensemble.hpp"
#include "kato/errors.hpp"
#include "kato/io/config.hpp"
#include "kato/io/serialize.hpp"

using namespace kato;

namespace {

struct Globals {
    std::string config;
    std::string out;
    std::string seed;
    int threads = 0;
    int checkpoints = 0;
};

struct Loaded {
    IniDocument doc;
    std::string hash;
};

Loaded load(const Globals& g) {
    if (g.config.empty()) throw ConfigError("--config is required");
    Loaded l{load_ini(g.config), ""};
    if (!g.seed.empty()) {
        parse_u64(g.seed, "--seed");
        l.doc.set("ensemble", "seed", g.seed);
    }
    if (g.checkpoints > 0) l.doc.set("time", "checkpoints", std::to_string(g.checkpoints));
    if (g.checkpoints < 0) throw ConfigError("--checkpoints must be positive");
    l.hash = hex64(config_hash(l.doc));
    return l;
}

OutputDir open_out(const Globals& g, const Loaded& l, const std::string& command) {
    return OutputDir(g.out.empty() ? "out/" + command : g.out, l.hash);
}

void write_sweep(OutputDir& out, const SweepReport& rep) {
    out.write_csv("sweep.csv", sweep_table(rep));
    const char* names[] = {"M1", "M2", "D_total", "D_layer", "weak_gap_max"};
    for (int k = 0; k < 5; ++k) {
        CsvTable t;
        t.columns = {"nu", names[k], "se"};
        for (const ConditionReport& q : rep.reports) {
            const MeanEstimate* e[] = {&q.m1, &q.m2, &q.d_total, &q.d_layer, nullptr};
            t.add({q.nu, e[k] ? e[k]->mean : q.weak_gap_max, e[k] ? e[k]->se : 0.0});
        }
        out.write_csv(std::string("plot_") + names[k] + ".csv", t);
    }
    out.write_json("sweep.json", to_json(rep));
    if (rep.corrector) {
        out.write_csv("corrector_table.csv", corrector_table(*rep.corrector));
        out.write_csv("corrector_slopes.csv", slope_table(*rep.corrector));
    }
    for (const ConditionReport& q : rep.reports)
        std::printf("nu %-10s M1 %-12s M2 %-12s D_total %-12s D_layer %-12s failed %d\n", fmt17(q.nu).c_str(),
                    fmt17(q.m1.mean).c_str(), fmt17(q.m2.mean).c_str(), fmt17(q.d_total.mean).c_str(),
                    fmt17(q.d_layer.mean).c_str(), q.paths_failed);
}

int cmd_simulate(const Globals& g) {
    const Loaded l = load(g);
    ExperimentConfig c = experiment_from_ini(l.doc, ViscosityField::single);
    c.validate();
    const int path = ini_int(l.doc, "ensemble", "path", 0);
    if (path < 0) throw ConfigError("ensemble.path must be >= 0");
    const TrajectoryRecord r = run_path(c, c.nu_list.front(), path);
    OutputDir out = open_out(g, l, "simulate");
    out.write_csv("trajectory.csv", record_table(r));
    Json j;
    j["nu"] = r.nu;
    j["path"] = r.path_index;
    j["brownian_seed"] = hex64(r.path_seed);
    j["n_steps"] = r.n_steps();
    j["substeps"] = r.substeps;
    j["failed"] = r.failed;
    j["final_energy"] = r.energy.empty() ? 0.0 : r.energy.back();
    out.write_json("summary.json", j);
    out.finish("simulate", canonical_text(l.doc));
    if (r.failed) {
        std::fprintf(stderr, "path failed the CFL condition after %d substeps\n", r.substeps);
        return 3;
    }
    std::printf("simulate: %d steps, final energy %s\n", r.n_steps(), fmt17(r.energy.back()).c_str());
    return 0;
}

int cmd_euler(const Globals& g) {
    const Loaded l = load(g);
    ExperimentConfig c = experiment_from_ini(l.doc, ViscosityField::none);
    c.mode = RunMode::deterministic;
    c.validate();
    OutputDir out = open_out(g, l, "euler");
    const EulerTrajectory traj = run_euler(c);
    out.write_csv("euler.csv", euler_table(traj));
    const PreparedForcing f = PreparedForcing::make(c.forcing, c.grid());
    const EnergyEstimate est = energy_estimate_check(traj, f);
    Json j;
    const double e0 = traj.energy.front();
    j["relative_energy_drift"] = e0 > 0.0 ? std::abs(traj.energy.back() - e0) / e0 : std::abs(traj.energy.back());
    j["max_gradient"] = max_gradient(traj);
    j["energy_estimate"] = {{"sup_energy", est.sup_energy}, {"bound", est.bound}, {"satisfied", est.satisfied}};

    const double size = ini_double(l.doc, "gronwall", "perturbation", 0.0);
    if (size > 0.0) {
        ForcingSpec fp = c.forcing;
        const double scale = ini_double(l.doc, "gronwall", "force_scale", 0.0);
        if (scale != 0.0) {
            ExperimentConfig tmp = c;
            tmp.forcing_perturbation_scale = scale;
            tmp.forcing_perturbation_power = 0.0;
            fp = ns_forcing(tmp, 1.0);
        }
        const TwinEuler t = twin_euler(c, size, fp, c.forcing);
        CsvTable tab;
        tab.columns = {"t", "lhs", "rhs"};
        for (std::size_t k = 0; k < t.check.times.size(); ++k) tab.add({t.check.times[k], t.check.lhs[k], t.check.rhs[k]});
        out.write_csv("gronwall.csv", tab);
        j["gronwall"] = {{"grad_bound", t.check.grad_bound},   {"force_term", t.check.force_term},
                         {"worst_ratio", t.check.worst_ratio}, {"first_violation", t.check.first_violation},
                         {"satisfied", t.check.satisfied}};
        std::printf("gronwall: worst lhs/rhs %s, %s\n", fmt17(t.check.worst_ratio).c_str(),
                    t.check.satisfied ? "satisfied" : "violated");
    }
    out.write_json("summary.json", j);
    out.finish("euler", canonical_text(l.doc));
    std::printf("euler: relative energy drift %s\n", fmt17(j["relative_energy_drift"].get<double>()).c_str());
    return 0;
}

int cmd_corrector(const Globals& g) {
    const Loaded l = load(g);
    ExperimentConfig c = experiment_from_ini(l.doc, ViscosityField::none);
    c.mode = RunMode::deterministic;
    c.validate();
    std::vector<double> deltas = c.corrector_deltas;
    if (deltas.empty()) deltas = {0.125, 0.0625, 0.03125, 0.015625};
    const double freeze = ini_double(l.doc, "corrector", "time", 0.0);
    const double tol = ini_double(l.doc, "corrector", "slope_tolerance", 0.2);
    const bool hard = ini_bool(l.doc, "corrector", "hard", true);

    StepOptions opts;
    opts.cfl_limit = c.cfl_limit;
    opts.solver = c.solver;
    const Grid grid = c.grid();
    EulerState s = make_euler_state(make_initial_stream(c.ic, grid), grid);
    if (freeze > 0.0) {
        const TimeGrid tg = TimeGrid::make(freeze, c.dt);
        for (int j = 0; j < tg.n_steps; ++j) {
            s = euler_step(s, tg.step_length(j), opts);
            s.time = tg.time(j + 1);
        }
    }
    const CorrectorReport rep = corrector_scaling_report(s, deltas, c.corrector_dt, opts);
    OutputDir out = open_out(g, l, "corrector-check");
    out.write_csv("corrector_table.csv", corrector_table(rep));
    out.write_csv("corrector_slopes.csv", slope_table(rep));
    out.write_json("corrector.json", to_json(rep));
    out.finish("corrector-check", canonical_text(l.doc));
    bool ok = true;
    for (std::size_t k = 0; k < corrector_norm_names.size(); ++k) {
        const bool pass = std::abs(rep.slopes[k].slope - corrector_exponents[k]) <= tol;
        ok = ok && pass;
        std::printf("%-15s slope %-22s expected %5.2f %s\n", corrector_norm_names[k], fmt17(rep.slopes[k].slope).c_str(),
                    corrector_exponents[k], pass ? "ok" : "off");
    }
    return ok || !hard ? 0 : 3;
}

int cmd_sweep(const Globals& g) {
    const Loaded l = load(g);
    const ExperimentConfig c = experiment_from_ini(l.doc, ViscosityField::list);
    const SweepReport rep = run_sweep(c);
    OutputDir out = open_out(g, l, "sweep");
    write_sweep(out, rep);
    out.finish("sweep", canonical_text(l.doc));
    return 0;
}

int cmd_energy_audit(const Globals& g) {
    const Loaded l = load(g);
    const ExperimentConfig c = experiment_from_ini(l.doc, ViscosityField::single);
    const std::vector<double> dts = ini_doubles(l.doc, "audit", "dts", {c.dt, c.dt / 2, c.dt / 4});
    const int weak_paths = ini_int(l.doc, "audit", "weak_paths", 1);
    const EnergyAudit a = energy_audit(c, dts, weak_paths);
    OutputDir out = open_out(g, l, "energy-audit");
    Json levels = Json::array();
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        const AuditLevel& lv = a.levels[i];
        CsvTable r;
        r.columns = {"t", "R", "se", "drift"};
        for (std::size_t j = 0; j < lv.residual.times.size(); ++j)
            r.add({lv.residual.times[j], lv.residual.residual[j], lv.residual.se[j], lv.residual.drift[j]});
        out.write_csv("energy_residual_" + std::to_string(i) + ".csv", r);
        CsvTable ito;
        ito.columns = {"t", "mean_pathwise", "expectation", "se"};
        for (std::size_t j = 0; j < lv.checkpoint_steps.size(); ++j)
            ito.add({lv.residual.times[lv.checkpoint_steps[j]], lv.ito.mean_pathwise[j], lv.ito.expectation[j], lv.ito.se[j]});
        out.write_csv("ito_" + std::to_string(i) + ".csv", ito);
        levels.push_back({{"dt", lv.dt},
                          {"max_abs_R", lv.max_abs_residual},
                          {"drift_reference_error", lv.drift_reference_error},
                          {"ito_worst_ratio", lv.ito.worst_ratio},
                          {"mean_abs_r_T", lv.ito.mean_abs_final},
                          {"weak_residual", lv.weak_residual},
                          {"uniform",
                           {{"lhs", lv.uniform.lhs},
                            {"rhs", lv.uniform.rhs_bound},
                            {"K", lv.uniform.k},
                            {"K_min", lv.uniform.k_min},
                            {"satisfied", lv.uniform.satisfied}}},
                          {"paths_failed", lv.paths_failed}});
    }
    Json j;
    j["levels"] = levels;
    j["order_R"] = a.order_residual;
    j["order_ito"] = a.order_ito;
    j["order_weak"] = a.order_weak;
    out.write_json("energy_audit.json", j);
    out.finish("energy-audit", canonical_text(l.doc));
    for (std::size_t i = 0; i < a.order_residual.size(); ++i)
        std::printf("dt %s -> %s: order R %.3f, E|r(T)| %.3f, weak %.3f\n", fmt17(a.levels[i].dt).c_str(),
                    fmt17(a.levels[i + 1].dt).c_str(), a.order_residual[i], a.order_ito[i], a.order_weak[i]);
    return 0;
}

int cmd_theorem6(const Globals& g) {
    const Loaded l = load(g);
    const ExperimentConfig c = experiment_from_ini(l.doc, ViscosityField::list);
    const Theorem6Schedule sch = theorem6_schedule(c, ini_double(l.doc, "theorem6", "m_first", 4.0),
                                                   ini_double(l.doc, "theorem6", "threshold", 0.05));
    const SweepReport rep = run_sweep(sch.config);
    OutputDir out = open_out(g, l, "theorem6");
    CsvTable t;
    t.columns = {"nu", "m", "data_distance", "perturbation"};
    for (const Theorem6Stage& s : sch.stages) t.add({s.nu, s.m, s.data_distance, s.perturbation});
    out.write_csv("schedule.csv", t);
    write_sweep(out, rep);
    out.finish("theorem6", canonical_text(l.doc));
    std::printf("schedule converged: %s\n", sch.converged ? "yes" : "no");
    return 0;
}

int cmd_theorem7(const Globals& g) {
    const Loaded l = load(g);
    const ExperimentConfig c = theorem7_config(experiment_from_ini(l.doc, ViscosityField::list));
    const SweepReport rep = run_sweep(c);
    OutputDir out = open_out(g, l, "theorem7");
    write_sweep(out, rep);
    const EulerTrajectory ref = run_euler(c);
    const EnergyEstimate est = energy_estimate_check(ref, PreparedForcing::make(c.forcing, c.grid()));
    out.write_json("energy_estimate.json",
                   Json{{"sup_energy", est.sup_energy}, {"bound", est.bound}, {"satisfied", est.satisfied}});
    out.finish("theorem7", canonical_text(l.doc));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inviscid-limit lab for the stochastic Navier-Stokes equations in a channel"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "master seed (overrides the config)");
    app.add_option("--out", g.out, "output directory");
    app.add_option("--threads", g.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);
    app.add_option("--checkpoints", g.checkpoints, "checkpoints per run (overrides the config)");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Globals&);
    };
    const Command commands[] = {
        {"simulate", "one (nu, path) simulation", cmd_simulate},
        {"euler", "Euler reference run, optional twin Gronwall check", cmd_euler},
        {"corrector-check", "boundary-layer corrector scaling table", cmd_corrector},
        {"sweep", "viscosity sweep with condition reports", cmd_sweep},
        {"energy-audit", "energy equality, Ito formula and weak formulation residuals", cmd_energy_audit},
        {"theorem6", "sweep with rough data and mollified approximants", cmd_theorem6},
        {"theorem7", "deterministic forced sweep", cmd_theorem7},
    };
    for (const Command& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    const char* det = std::getenv("KATO_DETERMINISTIC");
    if (det && std::string(det) == "1")
        omp_set_num_threads(1);
    else if (g.threads > 0)
        omp_set_num_threads(g.threads);

    try {
        for (const Command& c : commands)
            if (app.got_subcommand(c.name)) return c.run(g);
    } catch (const ResolutionError& e) {
        std::fprintf(stderr, "resolution error: %s\n", e.what());
        return 4;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const InvalidInputError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
