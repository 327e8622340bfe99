#include "kato/dynamics/noise.hpp"

#include <cmath>

#include "kato/dynamics/random.hpp"
#include "kato/dynamics/stream.hpp"
#include "kato/errors.hpp"
#include "kato/fields/norms.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

NoiseModel make_noise_modes(const Grid& grid, int n_modes, std::uint64_t seed) {
    if (n_modes < 0) throw ConfigError("noise: n_modes must be >= 0");
    const int nyquist = grid.nx / 2 - 1;
    if ((n_modes + 1) / 2 > nyquist)
        throw ConfigError("noise: n_modes = " + std::to_string(n_modes) + " exceeds the grid Nyquist limit (" +
                          std::to_string(2 * nyquist) + " modes for nx = " + std::to_string(grid.nx) + ")");
    NoiseModel model;
    model.grid = grid;
    model.n_modes = n_modes;
    model.seed = seed;
    for (int k = 1; k <= n_modes; ++k) {
        const int kx = (k + 1) / 2;
        const bool sine = k % 2 == 1;
        const ScalarField psi = ScalarField::sample(grid, Stagger::node, [&](double x, double y) {
            const double s = sinpi(y);
            const double a = 2.0 * kx * x / grid.length_x;
            return s * s * (sine ? sinpi(a) : cospi(a));
        });
        VelocityField sigma = rot(psi, BoundaryCondition::no_slip);
        sigma *= 1.0 / l2_norm(sigma);
        model.mode_norms.push_back(l2_norm(sigma));
        model.modes.push_back(std::move(sigma));
    }
    return model;
}

BrownianPath sample_path(const NoiseModel& model, int n_steps, double dt, std::uint64_t path_seed) {
    if (!(dt > 0.0)) throw ConfigError("sample_path: dt must be positive");
    if (n_steps < 0) throw ConfigError("sample_path: n_steps must be >= 0");
    const int n = model.n_modes;
    BrownianPath p;
    p.dt = dt;
    p.n_steps = n_steps;
    p.n_modes = n;
    p.increments.assign(static_cast<std::size_t>(n_steps) * n, 0.0);
    p.running.assign(static_cast<std::size_t>(n_steps + 1) * n, 0.0);
    if (n_steps == 0 || n == 0) return p;

    int levels = 0, coarse = n_steps;
    while (coarse % 2 == 0) {
        coarse /= 2;
        ++levels;
    }
    const Philox4x32 gen(model.seed);
    const auto lo = static_cast<std::uint32_t>(path_seed), hi = static_cast<std::uint32_t>(path_seed >> 32);

    for (int k = 0; k < n; ++k) {
        std::vector<double> level_inc(coarse);
        double h = dt * std::ldexp(1.0, levels);
        for (int i = 0; i < coarse; ++i)
            level_inc[i] = std::sqrt(h) * normal_at(gen, {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k), lo, hi});
        for (int level = 1; level <= levels; ++level) {
            h *= 0.5;
            std::vector<double> finer(level_inc.size() * 2);
            const auto tag = static_cast<std::uint32_t>(level) << 16 | static_cast<std::uint32_t>(k);
            for (std::size_t i = 0; i < level_inc.size(); ++i) {
                const double z = normal_at(gen, {static_cast<std::uint32_t>(i), tag, lo, hi});
                const double left = 0.5 * level_inc[i] + std::sqrt(0.5 * h) * z;
                finer[2 * i] = left;
                finer[2 * i + 1] = level_inc[i] - left;
            }
            level_inc = std::move(finer);
        }
        for (int s = 0; s < n_steps; ++s) p.increments[static_cast<std::size_t>(s) * n + k] = level_inc[s];
    }
    for (int s = 0; s < n_steps; ++s)
        for (int k = 0; k < n; ++k)
            p.running[static_cast<std::size_t>(s + 1) * n + k] = p.running[static_cast<std::size_t>(s) * n + k] + p.increment(s, k);
    return p;
}

TimeGrid TimeGrid::make(double horizon, double dt) {
    if (!(dt > 0.0)) throw ConfigError("time grid: dt must be positive");
    if (!(horizon >= 0.0)) throw ConfigError("time grid: T must be >= 0");
    TimeGrid g;
    g.horizon = horizon;
    g.dt = dt;
    const double ratio = horizon / dt;
    // tolerate round-off in T/dt so exact multiples do not gain a sliver step
    const double nearest = std::round(ratio);
    g.n_steps = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio) ? static_cast<int>(nearest)
                                                                          : static_cast<int>(std::ceil(ratio));
    return g;
}

double TimeGrid::step_length(int step) const {
    if (step + 1 < n_steps) return dt;
    return horizon - dt * (n_steps - 1);
}

double TimeGrid::time(int step) const {
    if (step >= n_steps) return horizon;
    return dt * step;
}

void fit_last_step(BrownianPath& path, const TimeGrid& grid) {
    if (path.n_steps == 0 || path.n_steps != grid.n_steps) return;
    const int last = path.n_steps - 1;
    const double h = grid.step_length(last);
    if (h == path.dt) return;
    const double c = std::sqrt(h / path.dt);
    for (int k = 0; k < path.n_modes; ++k) {
        path.increments[static_cast<std::size_t>(last) * path.n_modes + k] *= c;
        path.running[static_cast<std::size_t>(last + 1) * path.n_modes + k] =
            path.w(last, k) + path.increment(last, k);
    }
}

}  // namespace kato
