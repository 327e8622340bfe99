#include "kato/dynamics/euler.hpp"

#include <cmath>
#include <string>

#include "kato/errors.hpp"
#include "kato/fields/norms.hpp"
#include "kato/fields/operators.hpp"
#include "kato/fields/projection.hpp"

namespace kato {

namespace {

// d omega / dt at every node; wall rows advect omega with the one-sided wall velocity.
ScalarField tendency(const EulerState& s, const PreparedForcing* forcing) {
    const Grid& g = s.omega.grid();
    const int nx = g.nx, ny = g.ny;
    ScalarField rate = jacobian(s.psi, s.omega);
    rate *= -1.0;
    for (int i = 0; i < nx; ++i) {
        const double ub = (4.0 * s.psi(i, 1) - s.psi(i, 2)) / (2.0 * g.dy);
        const double ut = -(4.0 * s.psi(i, ny - 1) - s.psi(i, ny - 2)) / (2.0 * g.dy);
        const double dxb = (s.omega.at(i + 1, 0) - s.omega.at(i - 1, 0)) / (2.0 * g.dx);
        const double dxt = (s.omega.at(i + 1, ny) - s.omega.at(i - 1, ny)) / (2.0 * g.dx);
        rate(i, 0) = -ub * dxb;
        rate(i, ny) = -ut * dxt;
    }
    if (forcing && forcing->spec.active()) rate.axpy(forcing->factor(s.time), forcing->curl);
    return rate;
}

}  // namespace

EulerState make_euler_state(const StreamFunction& stream, const Grid& grid, double time) {
    EulerState s;
    s.time = time;
    s.psi = stream.sample_psi(grid);
    s.omega = node_laplacian(s.psi);
    s.omega *= -1.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = x_of(grid, Stagger::node, i);
        s.omega(i, 0) = stream.omega(x, 0.0);
        s.omega(i, grid.ny) = stream.omega(x, Grid::height);
    }
    s.velocity = rot(s.psi, BoundaryCondition::no_penetration);
    return s;
}

EulerState euler_state_from_vorticity(ScalarField omega, double time, const SolverOptions& solver) {
    const Grid& g = omega.grid();
    EulerState s;
    s.time = time;
    s.psi = cached_solver(g, WallClosure::dirichlet_node, solver)->solve(0.0, 1.0, omega);
    s.omega = std::move(omega);
    s.velocity = rot(s.psi, BoundaryCondition::no_penetration);
    return s;
}

EulerState euler_step(const EulerState& state, double dt, const StepOptions& options) {
    if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("euler_step: dt must be nonzero and finite");
    const double cfl = cfl_number(state.velocity, std::abs(dt));
    if (!(cfl <= options.cfl_limit))
        throw StepSizeError("CFL number " + std::to_string(cfl) + " exceeds limit " +
                                std::to_string(options.cfl_limit),
                            cfl);

    ScalarField half = state.omega;
    half.axpy(0.5 * dt, tendency(state, options.forcing));
    const EulerState mid = euler_state_from_vorticity(std::move(half), state.time + 0.5 * dt, options.solver);

    ScalarField next = state.omega;
    next.axpy(dt, tendency(mid, options.forcing));
    EulerState out = euler_state_from_vorticity(std::move(next), state.time + dt, options.solver);
    if (!std::isfinite(out.omega.max_abs())) throw NumericalError("euler_step: non-finite vorticity");
    return out;
}

double kinetic_energy(const EulerState& state) {
    const double n = l2_norm(state.velocity);
    return n * n;
}

}  // namespace kato
