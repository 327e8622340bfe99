#pragma once

#include <cstdint>
#include <vector>

#include "kato/dynamics/noise.hpp"
#include "kato/fields/grid.hpp"

namespace kato {

/// Time series of one Navier-Stokes path. Per-step arrays have n_steps + 1 entries.
struct TrajectoryRecord {
    double nu = 0.0;
    double dt = 0.0;
    double horizon = 0.0;
    double layer_delta = 0.0;
    int n_modes = 0;
    int path_index = 0;
    std::uint64_t path_seed = 0;
    int substeps = 1;  // base steps were split this many times after CFL failures
    bool failed = false;

    std::vector<double> times;
    std::vector<double> energy;            // ||u||^2
    std::vector<double> enstrophy;         // ||grad u||^2
    std::vector<double> layer_dissipation; // ||grad u||^2 on Gamma_delta
    std::vector<double> cross;             // <u, sigma_k>, (n_steps + 1) x n_modes
    std::vector<double> brownian;          // W^k(t_j), same layout

    std::vector<int> checkpoint_steps;
    std::vector<VelocityField> snapshots;  // one per checkpoint

    int n_steps() const { return times.empty() ? 0 : static_cast<int>(times.size()) - 1; }
    double cross_at(int step, int k) const { return cross[static_cast<std::size_t>(step) * n_modes + k]; }
    double w_at(int step, int k) const { return brownian[static_cast<std::size_t>(step) * n_modes + k]; }
};

/// Appends the diagnostics of one state to the per-step arrays.
void record_sample(TrajectoryRecord& rec, double time, const VelocityField& u, const NoiseModel& model,
                   const double* w);

/// Euler trajectory: per-step energy and gradient bound, snapshots at checkpoints.
struct EulerTrajectory {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> grad_linf;
    std::vector<int> checkpoint_steps;
    std::vector<VelocityField> snapshots;
};

}  // namespace kato
