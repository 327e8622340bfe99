#include "kato/dynamics/navier_stokes.hpp"

#include <cmath>
#include <string>

#include "kato/errors.hpp"
#include "kato/fields/operators.hpp"
#include "kato/fields/projection.hpp"

namespace kato {

double cfl_number(const VelocityField& u, double dt) { return u.max_abs() * dt / u.grid().min_spacing(); }

NSState ns_step(const NSState& state, double dt, const NoiseModel& model, std::span<const double> dW,
                const StepOptions& options) {
    if (!(dt > 0.0)) throw ConfigError("ns_step: dt must be positive");
    if (!(state.nu >= 0.0)) throw ConfigError("ns_step: viscosity must be >= 0");
    if (static_cast<int>(dW.size()) != model.n_modes)
        throw ConfigError("ns_step: expected " + std::to_string(model.n_modes) + " increments, got " +
                          std::to_string(dW.size()));
    const VelocityField& u = state.velocity;
    const Grid& g = u.grid();
    const double cfl = cfl_number(u, dt);
    if (!(cfl <= options.cfl_limit))
        throw StepSizeError("CFL number " + std::to_string(cfl) + " exceeds limit " +
                                std::to_string(options.cfl_limit),
                            cfl);

    VelocityField w = u;
    w.bc = BoundaryCondition::no_slip;
    w.axpy(-dt, advect(w, w));
    if (options.forcing && options.forcing->spec.active())
        w.axpy(dt * options.forcing->factor(state.time), options.forcing->velocity);

    if (state.nu > 0.0) {
        const double beta = state.nu * dt;
        w.u = cached_solver(g, WallClosure::dirichlet_cell, options.solver)->solve(1.0, beta, w.u);
        w.v = cached_solver(g, WallClosure::dirichlet_node, options.solver)->solve(1.0, beta, w.v);
    }

    const double amp = std::sqrt(state.nu);
    for (int k = 0; k < model.n_modes; ++k) w.axpy(amp * dW[k], model.modes[k]);

    NSState next;
    next.velocity = leray_project(w, options.solver);
    next.velocity.bc = BoundaryCondition::no_slip;
    next.time = state.time + dt;
    next.nu = state.nu;
    if (!std::isfinite(next.velocity.max_abs())) throw NumericalError("ns_step: non-finite velocity");
    return next;
}

}  // namespace kato
