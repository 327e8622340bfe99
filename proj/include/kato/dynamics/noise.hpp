#pragma once

#include <cstdint>
#include <vector>

#include "kato/fields/grid.hpp"

namespace kato {

/// Spatial noise profiles sigma_k, each discretely divergence-free, zero on the
/// walls and of unit L2 norm.
struct NoiseModel {
    Grid grid;
    int n_modes = 0;
    std::vector<VelocityField> modes;
    std::vector<double> mode_norms;
    std::uint64_t seed = 0;
};

/// Mode k (1-based) has stream sin^2(pi y) * trig(2 pi k' x / Lx), k' = ceil(k/2),
/// sine for odd k and cosine for even k. Requires k' <= nx/2 - 1.
NoiseModel make_noise_modes(const Grid& grid, int n_modes, std::uint64_t seed = 0);

/// Per-step Gaussian increments of N independent Brownian motions.
///
/// Paths are built coarse-to-fine: n_steps = n0 * 2^L with n0 odd; n0 increments on
/// the coarse spacing dt * 2^L are drawn first and then refined L times by Brownian
/// bridges. Paths with equal (seed, path_seed) and equal n0 * dt * 2^L therefore
/// describe the same Brownian motion at different resolutions.
struct BrownianPath {
    double dt = 0.0;
    int n_steps = 0;
    int n_modes = 0;
    std::vector<double> increments;  // n_steps x n_modes, row-major
    std::vector<double> running;     // (n_steps + 1) x n_modes, W(t_j)

    double increment(int step, int k) const { return increments[static_cast<std::size_t>(step) * n_modes + k]; }
    double w(int step, int k) const { return running[static_cast<std::size_t>(step) * n_modes + k]; }
    const double* step_increments(int step) const {
        return increments.data() + static_cast<std::size_t>(step) * n_modes;
    }
};

BrownianPath sample_path(const NoiseModel& model, int n_steps, double dt, std::uint64_t path_seed);

/// Uniform steps of size dt, the last one shortened to land on T.
struct TimeGrid {
    double horizon = 0.0;
    double dt = 0.0;
    int n_steps = 0;

    static TimeGrid make(double horizon, double dt);
    double step_length(int step) const;
    double time(int step) const;
};

/// Rescales the increments of a path built on the uniform dt so the final step
/// matches a shortened last step of length h.
void fit_last_step(BrownianPath& path, const TimeGrid& grid);

}  // namespace kato
