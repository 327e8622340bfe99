#include "kato/dynamics/forcing.hpp"

#include <cmath>

#include "kato/fields/operators.hpp"

namespace kato {

double ForcingSpec::factor(double t) const { return frequency == 0.0 ? 1.0 : std::cos(frequency * t); }

PreparedForcing PreparedForcing::make(const ForcingSpec& spec, const Grid& grid) {
    PreparedForcing p;
    p.spec = spec;
    const ScalarField psi = spec.stream.sample_psi(grid);
    p.velocity = rot(psi, BoundaryCondition::no_penetration);
    p.curl = node_laplacian(psi);
    p.curl *= -1.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = x_of(grid, Stagger::node, i);
        p.curl(i, 0) = spec.stream.omega(x, 0.0);
        p.curl(i, grid.ny) = spec.stream.omega(x, Grid::height);
    }
    return p;
}

}  // namespace kato
