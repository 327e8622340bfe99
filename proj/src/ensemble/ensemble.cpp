#include "kato/ensemble/ensemble.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>

#include "kato/diagnostics/stats.hpp"
#include "kato/dynamics/euler.hpp"
#include "kato/dynamics/random.hpp"
#include "kato/errors.hpp"
#include "kato/fields/norms.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

namespace {

constexpr std::uint64_t brownian_tag = 0x62726f776e69616eULL;
constexpr std::uint64_t perturbation_tag = 0x7065727475726221ULL;

ForcingSpec combine(const ForcingSpec& f, const ForcingSpec& g, double c) {
    if (!g.active() || c == 0.0) return f;
    if (f.active() && f.frequency != g.frequency)
        throw ConfigError("forcing perturbation must share the frequency of the reference force");
    ForcingSpec out;
    out.frequency = f.active() ? f.frequency : g.frequency;
    out.stream = f.active() ? f.stream + g.stream.scaled(c) : g.stream.scaled(c);
    return out;
}

// Increments of base step j split into 2^s substeps, taken from the refined path.
std::vector<double> split_increments(const BrownianPath& fine, int step, int parts, double scale) {
    const int n = fine.n_modes;
    std::vector<double> out(static_cast<std::size_t>(parts) * n);
    for (int p = 0; p < parts; ++p)
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(p) * n + k] = scale * fine.increment(step * parts + p, k);
    return out;
}

}  // namespace

RunMode parse_run_mode(const std::string& s) {
    if (s == "stochastic") return RunMode::stochastic;
    if (s == "deterministic") return RunMode::deterministic;
    throw ConfigError("unknown mode '" + s + "' (expected stochastic or deterministic)");
}

std::string to_string(RunMode m) { return m == RunMode::stochastic ? "stochastic" : "deterministic"; }

Grid ExperimentConfig::grid() const { return Grid::make(nx, ny, length_x); }

void ExperimentConfig::validate() const {
    const Grid g = grid();
    if (!(horizon > 0.0)) throw ConfigError("T must be positive");
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (nu_list.empty()) throw ConfigError("nu_list must not be empty");
    for (double nu : nu_list)
        if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu_list entries must be positive");
    std::vector<double> s = sorted_nus(*this);
    if (s.size() != nu_list.size()) throw ConfigError("nu_list entries must be distinct");
    if (!(layer_c > 0.0)) throw ConfigError("layer constant c must be positive");
    if (ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
    if (checkpoints < 1) throw ConfigError("checkpoints must be >= 1");
    if (n_modes < 0) throw ConfigError("n_modes must be >= 0");
    if (max_halvings < 0) throw ConfigError("max_halvings must be >= 0");
    if (!ns_ic.empty() && ns_ic.size() != nu_list.size())
        throw ConfigError("ns_ic needs one entry per nu");
    make_noise_modes(g, effective_modes(), seed);
    const VelocityField u0 = make_initial_condition(ic, g);
    const double cfl = cfl_number(u0, dt);
    if (cfl > cfl_limit)
        throw ConfigError("dt fails the CFL precheck for the reference datum (CFL " + std::to_string(cfl) + " > " +
                          std::to_string(cfl_limit) + ")");
}

std::vector<double> sorted_nus(const ExperimentConfig& config) {
    std::vector<double> s = config.nu_list;
    std::sort(s.begin(), s.end(), std::greater<>());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

int nu_index(const ExperimentConfig& config, double nu) {
    const std::vector<double> s = sorted_nus(config);
    const auto it = std::find(s.begin(), s.end(), nu);
    if (it == s.end()) throw ConfigError("nu = " + std::to_string(nu) + " is not in nu_list");
    return static_cast<int>(it - s.begin());
}

PathKeys path_keys(const ExperimentConfig& config, double nu, int path_index) {
    PathKeys k;
    k.nu = nu;
    k.nu_index = nu_index(config, nu);
    k.path_index = path_index;
    k.brownian = derive_seed(config.seed, brownian_tag, static_cast<std::uint64_t>(path_index));
    k.perturbation = derive_seed(derive_seed(config.seed, perturbation_tag, static_cast<std::uint64_t>(k.nu_index)),
                                 static_cast<std::uint64_t>(path_index));
    return k;
}

NoiseModel make_noise_model(const ExperimentConfig& config) {
    return make_noise_modes(config.grid(), config.effective_modes(), config.seed);
}

VelocityField ns_initial_condition(const ExperimentConfig& config, double nu, int path_index) {
    const Grid g = config.grid();
    IcSpec spec = config.ic;
    if (!config.ns_ic.empty()) {
        const auto it = std::find(config.nu_list.begin(), config.nu_list.end(), nu);
        if (it == config.nu_list.end()) throw ConfigError("nu is not in nu_list");
        spec = config.ns_ic[static_cast<std::size_t>(it - config.nu_list.begin())];
    }
    VelocityField u0 = make_initial_condition(spec, g);
    const double a = config.perturbation_scale * std::pow(nu, config.perturbation_power);
    if (a != 0.0) {
        IcSpec w;
        w.kind = IcKind::mollified;
        w.seed = path_keys(config, nu, path_index).perturbation;
        VelocityField p = make_initial_condition(w, g);
        const double n = l2_norm(p);
        if (n > 0.0) u0.axpy(a / n, p);
    }
    return u0;
}

ForcingSpec ns_forcing(const ExperimentConfig& config, double nu) {
    if (config.mode != RunMode::deterministic) return {};
    return combine(config.forcing, config.forcing_perturbation,
                   config.forcing_perturbation_scale * std::pow(nu, config.forcing_perturbation_power));
}

TrajectoryRecord run_path(const ExperimentConfig& config, double nu, int path_index) {
    return run_path(config, nu, path_index, make_noise_model(config));
}

TrajectoryRecord run_path(const ExperimentConfig& config, double nu, int path_index, const NoiseModel& model) {
    const TimeGrid tg = TimeGrid::make(config.horizon, config.dt);
    const int n = tg.n_steps;
    const PathKeys keys = path_keys(config, nu, path_index);
    BrownianPath path = sample_path(model, n, config.dt, keys.brownian);
    fit_last_step(path, tg);

    const PreparedForcing forcing = PreparedForcing::make(ns_forcing(config, nu), config.grid());
    StepOptions opts;
    opts.cfl_limit = config.cfl_limit;
    opts.solver = config.solver;
    opts.forcing = forcing.spec.active() ? &forcing : nullptr;

    TrajectoryRecord rec;
    rec.nu = nu;
    rec.dt = config.dt;
    rec.horizon = config.horizon;
    rec.layer_delta = config.layer_c * nu;
    rec.n_modes = model.n_modes;
    rec.path_index = path_index;
    rec.path_seed = keys.brownian;
    rec.checkpoint_steps = config.dense_snapshots ? checkpoint_steps(n, n) : checkpoint_steps(n, config.checkpoints);
    if (n == 0) rec.checkpoint_steps = {0};

    NSState state{0.0, ns_initial_condition(config, nu, path_index), nu};
    std::size_t next_checkpoint = 0;
    auto sample = [&](int step) {
        record_sample(rec, state.time, state.velocity, model, model.n_modes ? path.running.data() + static_cast<std::size_t>(step) * model.n_modes : nullptr);
        if (next_checkpoint < rec.checkpoint_steps.size() && rec.checkpoint_steps[next_checkpoint] == step) {
            rec.snapshots.push_back(state.velocity);
            ++next_checkpoint;
        }
    };
    sample(0);

    int halvings = 0;
    BrownianPath fine;
    for (int j = 0; j < n; ++j) {
        const double h = tg.step_length(j);
        const double t_next = tg.time(j + 1);
        for (;;) {
            try {
                if (halvings == 0) {
                    state = ns_step(state, h, model, {path.step_increments(j), static_cast<std::size_t>(model.n_modes)}, opts);
                } else {
                    const int parts = 1 << halvings;
                    const std::vector<double> inc =
                        split_increments(fine, j, parts, h == config.dt ? 1.0 : std::sqrt(h / config.dt));
                    NSState s = state;
                    for (int p = 0; p < parts; ++p)
                        s = ns_step(s, h / parts, model,
                                    {inc.data() + static_cast<std::size_t>(p) * model.n_modes, static_cast<std::size_t>(model.n_modes)},
                                    opts);
                    state = std::move(s);
                }
                break;
            } catch (const StepSizeError&) {
                if (halvings >= config.max_halvings) {
                    rec.failed = true;
                    rec.substeps = 1 << halvings;
                    return rec;
                }
                ++halvings;
                fine = sample_path(model, n << halvings, config.dt / (1 << halvings), keys.brownian);
            }
        }
        state.time = t_next;
        sample(j + 1);
    }
    rec.substeps = 1 << halvings;
    return rec;
}

EulerTrajectory run_euler(const StreamFunction& initial, const ForcingSpec& forcing, const Grid& grid, double horizon,
                          double dt, int checkpoints, const StepOptions& options) {
    const TimeGrid tg = TimeGrid::make(horizon, dt);
    const PreparedForcing prepared = PreparedForcing::make(forcing, grid);
    StepOptions opts = options;
    opts.forcing = prepared.spec.active() ? &prepared : nullptr;

    EulerTrajectory traj;
    traj.checkpoint_steps = checkpoint_steps(tg.n_steps, checkpoints);
    EulerState s = make_euler_state(initial, grid, 0.0);
    std::size_t next = 0;
    auto sample = [&](int step) {
        traj.times.push_back(s.time);
        traj.energy.push_back(inner(s.velocity, s.velocity));
        traj.grad_linf.push_back(gradient_linf(s.velocity));
        if (next < traj.checkpoint_steps.size() && traj.checkpoint_steps[next] == step) {
            traj.snapshots.push_back(s.velocity);
            ++next;
        }
    };
    sample(0);
    for (int j = 0; j < tg.n_steps; ++j) {
        s = euler_step(s, tg.step_length(j), opts);
        s.time = tg.time(j + 1);
        sample(j + 1);
    }
    return traj;
}

EulerTrajectory run_euler(const ExperimentConfig& config) {
    StepOptions opts;
    opts.cfl_limit = config.cfl_limit;
    opts.solver = config.solver;
    const ForcingSpec f = config.mode == RunMode::deterministic ? config.forcing : ForcingSpec{};
    return run_euler(make_initial_stream(config.ic, config.grid()), f, config.grid(), config.horizon, config.dt,
                     config.dense_snapshots ? TimeGrid::make(config.horizon, config.dt).n_steps : config.checkpoints,
                     opts);
}

StreamFunction unit_perturbation(const Grid& grid) {
    StreamFunction s;
    s.length_x = grid.length_x;
    s.terms = {{1.0, 1, true, 1}, {0.5, 2, false, 2}, {0.25, 0, false, 3}};
    const double n = l2_norm(rot(s.sample_psi(grid), BoundaryCondition::no_penetration));
    return s.scaled(1.0 / n);
}

TwinEuler twin_euler(const ExperimentConfig& config, double size, const ForcingSpec& f, const ForcingSpec& fbar,
                     double margin) {
    const Grid g = config.grid();
    StepOptions opts;
    opts.cfl_limit = config.cfl_limit;
    opts.solver = config.solver;
    const StreamFunction base = make_initial_stream(config.ic, g);
    TwinEuler t;
    t.reference = run_euler(base, fbar, g, config.horizon, config.dt, config.checkpoints, opts);
    t.perturbed = run_euler(base + unit_perturbation(g).scaled(size), f, g, config.horizon, config.dt,
                            config.checkpoints, opts);
    const PreparedForcing pf = PreparedForcing::make(f, g);
    const PreparedForcing pfbar = PreparedForcing::make(fbar, g);
    const double grad = max_gradient(t.reference);
    if (f.active() || fbar.active())
        t.check = forced_gronwall_bound_check(t.perturbed, t.reference, pf, pfbar, grad, margin);
    else
        t.check = gronwall_bound_check(t.perturbed, t.reference, grad, margin);
    t.reference_estimate = energy_estimate_check(t.reference, pfbar);
    t.perturbed_estimate = energy_estimate_check(t.perturbed, pf);
    return t;
}

std::vector<TrajectoryRecord> run_ensemble(const ExperimentConfig& config, double nu) {
    const NoiseModel model = make_noise_model(config);
    std::vector<TrajectoryRecord> out(config.ensemble_size);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (int p = 0; p < config.ensemble_size; ++p) {
        try {
            out[p] = run_path(config, nu, p, model);
        } catch (...) {
#pragma omp critical(kato_ensemble_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

SweepReport run_sweep(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    SweepReport rep;
    rep.config = config;
    rep.nus = sorted_nus(config);
    const Grid grid = config.grid();
    const NoiseModel model = make_noise_model(config);
    const int m = config.ensemble_size;
    const int nn = static_cast<int>(rep.nus.size());

    for (double nu : rep.nus)
        for (int p = 0; p < m; ++p) rep.keys.push_back(path_keys(config, nu, p));

    const EulerTrajectory euler = run_euler(config);
    {
        const double e0 = euler.energy.front();
        rep.euler_energy_drift = e0 > 0.0 ? std::abs(euler.energy.back() - e0) / e0 : std::abs(euler.energy.back());
    }

    std::vector<TrajectoryRecord> records(static_cast<std::size_t>(nn) * m);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (int task = 0; task < nn * m; ++task) {
        try {
            records[task] = run_path(config, rep.nus[task / m], task % m, model);
        } catch (...) {
#pragma omp critical(kato_sweep_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    for (int q = 0; q < nn; ++q) {
        std::vector<TrajectoryRecord> ens(records.begin() + static_cast<std::ptrdiff_t>(q) * m,
                                          records.begin() + static_cast<std::ptrdiff_t>(q + 1) * m);
        int split = 1;
        bool any = false;
        for (const TrajectoryRecord& r : ens) {
            split = std::max(split, r.substeps);
            any = any || !r.failed;
        }
        if (!any) throw NumericalError("every path failed the CFL condition at nu = " + std::to_string(rep.nus[q]), 0, 0.0);
        rep.reports.push_back(condition_report(ens, euler, grid));
        rep.substeps.push_back(split);
    }
    for (int q = 1; q < nn; ++q) {
        if (rep.reports[q].m2.mean > rep.reports[q - 1].m2.mean) rep.monotone_m2 = false;
        if (rep.reports[q].d_layer.mean > rep.reports[q - 1].d_layer.mean) rep.monotone_d_layer = false;
    }

    if (!config.corrector_deltas.empty()) {
        const EulerState s = make_euler_state(make_initial_stream(config.ic, grid), grid);
        StepOptions opts;
        opts.cfl_limit = config.cfl_limit;
        opts.solver = config.solver;
        rep.corrector = corrector_scaling_report(s, config.corrector_deltas, config.corrector_dt, opts);
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

Theorem6Schedule theorem6_schedule(const ExperimentConfig& config, double m_first, double threshold) {
    if (config.ic.kind != IcKind::rough) throw ConfigError("theorem6 schedule needs a rough initial datum");
    if (!(m_first > 0.0)) throw ConfigError("theorem6 schedule: first mollification scale must be positive");
    Theorem6Schedule sch;
    sch.threshold = threshold;
    sch.config = config;
    sch.config.nu_list = sorted_nus(config);
    sch.config.ns_ic.clear();
    const Grid g = config.grid();
    const VelocityField rough = make_initial_condition(config.ic, g);
    double m = m_first;
    for (double nu : sch.config.nu_list) {
        IcSpec s = config.ic;
        s.kind = IcKind::mollified;
        s.m = m;
        sch.config.ns_ic.push_back(s);
        Theorem6Stage st;
        st.nu = nu;
        st.m = m;
        st.data_distance = l2_norm(rough - make_initial_condition(s, g));
        st.perturbation = config.perturbation_scale * std::pow(nu, config.perturbation_power);
        sch.stages.push_back(st);
        m *= 2.0;
    }
    sch.converged = !sch.stages.empty() && sch.stages.back().data_distance < threshold;
    return sch;
}

ExperimentConfig theorem7_config(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.mode = RunMode::deterministic;
    c.n_modes = 0;
    c.ensemble_size = 1;
    return c;
}

}  // namespace kato
