#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kato/corrector/corrector.hpp"
#include "kato/diagnostics/conditions.hpp"
#include "kato/diagnostics/record.hpp"
#include "kato/diagnostics/stability.hpp"
#include "kato/dynamics/forcing.hpp"
#include "kato/dynamics/initial.hpp"
#include "kato/dynamics/navier_stokes.hpp"
#include "kato/dynamics/noise.hpp"

namespace kato {

enum class RunMode { stochastic, deterministic };

RunMode parse_run_mode(const std::string& s);
std::string to_string(RunMode m);

struct ExperimentConfig {
    int nx = 64;
    int ny = 64;
    double length_x = 1.0;
    double horizon = 0.5;
    double dt = 1e-3;
    std::vector<double> nu_list{1e-2};
    double layer_c = 1.0;  // layer width delta = c nu
    int n_modes = 4;
    int ensemble_size = 16;
    std::uint64_t seed = 1;
    IcSpec ic;  // Euler reference datum ubar0
    /// Optional NS data, one entry per nu in the order given by nu_list; empty means ubar0.
    std::vector<IcSpec> ns_ic;
    /// u0^nu = NS datum + scale nu^power w, w a unit-norm random smooth field per (nu, path).
    double perturbation_scale = 0.0;
    double perturbation_power = 0.5;
    int checkpoints = 64;
    RunMode mode = RunMode::stochastic;
    ForcingSpec forcing;               // Euler reference force (deterministic mode)
    ForcingSpec forcing_perturbation;  // NS force f^nu = f + scale nu^power g, same frequency as f
    double forcing_perturbation_scale = 0.0;
    double forcing_perturbation_power = 0.5;
    double cfl_limit = 0.5;
    SolverOptions solver;
    int max_halvings = 3;
    bool dense_snapshots = false;
    std::vector<double> corrector_deltas;  // empty: no corrector table
    double corrector_dt = 1e-4;

    Grid grid() const;
    int effective_modes() const { return mode == RunMode::deterministic ? 0 : n_modes; }
    /// Throws ConfigError on any violated invariant, including the CFL precheck for ubar0.
    void validate() const;
};

/// The nu values sorted strictly decreasing. Seeds use the position in this list.
std::vector<double> sorted_nus(const ExperimentConfig& config);
int nu_index(const ExperimentConfig& config, double nu);

struct PathKeys {
    double nu = 0.0;
    int nu_index = 0;
    int path_index = 0;
    std::uint64_t brownian = 0;      // same for every nu: common random numbers
    std::uint64_t perturbation = 0;
};

PathKeys path_keys(const ExperimentConfig& config, double nu, int path_index);

NoiseModel make_noise_model(const ExperimentConfig& config);

/// Initial datum u0^nu of one path.
VelocityField ns_initial_condition(const ExperimentConfig& config, double nu, int path_index);

/// Force acting on the NS path at viscosity nu (deterministic mode).
ForcingSpec ns_forcing(const ExperimentConfig& config, double nu);

/// Simulates one path on [0, T]. A CFL failure splits the remaining steps into 2, 4, 8
/// substeps driven by the refined Brownian path; after max_halvings the record is marked failed.
TrajectoryRecord run_path(const ExperimentConfig& config, double nu, int path_index, const NoiseModel& model);
TrajectoryRecord run_path(const ExperimentConfig& config, double nu, int path_index);

/// Euler reference from ubar0 with the configured force.
EulerTrajectory run_euler(const ExperimentConfig& config);
EulerTrajectory run_euler(const StreamFunction& initial, const ForcingSpec& forcing, const Grid& grid,
                          double horizon, double dt, int checkpoints, const StepOptions& options = {});

/// Smooth wall-vanishing stream whose discrete velocity has unit L2 norm.
StreamFunction unit_perturbation(const Grid& grid);

struct TwinEuler {
    EulerTrajectory reference;  // ubar0 driven by fbar
    EulerTrajectory perturbed;  // ubar0 + size w driven by f
    GronwallCheck check;        // forced bound when either force is active
    EnergyEstimate reference_estimate;
    EnergyEstimate perturbed_estimate;
};

TwinEuler twin_euler(const ExperimentConfig& config, double size, const ForcingSpec& f, const ForcingSpec& fbar,
                     double margin = 0.1);

struct SweepReport {
    ExperimentConfig config;
    std::vector<double> nus;  // sorted
    std::vector<ConditionReport> reports;
    std::vector<PathKeys> keys;
    std::vector<int> substeps;  // per report: largest split used by any path
    double euler_energy_drift = 0.0;
    std::optional<CorrectorReport> corrector;
    bool monotone_m2 = true;       // M2 nonincreasing as nu decreases
    bool monotone_d_layer = true;  // D_layer nonincreasing as nu decreases
    double wall_seconds = 0.0;
};

/// Runs every (nu, path) pair in parallel. Throws NumericalError if every path of some nu failed.
SweepReport run_sweep(const ExperimentConfig& config);

/// Records of all paths at one viscosity, in path order.
std::vector<TrajectoryRecord> run_ensemble(const ExperimentConfig& config, double nu);

struct Theorem6Stage {
    double nu = 0.0;
    double m = 0.0;               // mollification scale of the NS datum
    double data_distance = 0.0;   // ||u0 - ubar0^m||
    double perturbation = 0.0;    // scale nu^power
};

struct Theorem6Schedule {
    ExperimentConfig config;  // ready for run_sweep
    std::vector<Theorem6Stage> stages;
    double threshold = 0.0;
    bool converged = false;   // last stage distance below threshold
};

/// Rough u0 as the Euler datum; nu_n paired with mollified approximants ubar0^{m_n},
/// m_n doubling from m_first. Requires ic.kind == rough.
Theorem6Schedule theorem6_schedule(const ExperimentConfig& config, double m_first = 4.0, double threshold = 0.05);

/// Deterministic forced variant: no noise, a single path per nu.
ExperimentConfig theorem7_config(const ExperimentConfig& config);

}  // namespace kato
