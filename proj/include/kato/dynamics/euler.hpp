#pragma once

#include "kato/dynamics/forcing.hpp"
#include "kato/dynamics/navier_stokes.hpp"
#include "kato/dynamics/stream.hpp"
#include "kato/fields/grid.hpp"

namespace kato {

/// Vorticity / stream-function state on nodes. psi = 0 on both walls (no net flux),
/// omega = -Lap_h psi on interior nodes; the wall rows of omega are carried along.
struct EulerState {
    double time = 0.0;
    ScalarField omega;
    ScalarField psi;
    VelocityField velocity;
};

EulerState make_euler_state(const StreamFunction& stream, const Grid& grid, double time = 0.0);

/// Recovers psi from interior omega (Dirichlet solve) and rebuilds the velocity.
EulerState euler_state_from_vorticity(ScalarField omega, double time, const SolverOptions& solver = {});

/// Midpoint RK2 step of d omega/dt + u.grad omega = curl f with the Arakawa Jacobian.
/// Negative dt integrates backwards. Throws StepSizeError on CFL violation.
EulerState euler_step(const EulerState& state, double dt, const StepOptions& options = {});

double kinetic_energy(const EulerState& state);

}  // namespace kato
