#include "kato/fields/operators.hpp"

#include "kato/errors.hpp"
#include "kato/fields/kernels.hpp"

namespace kato {

ScalarField divergence(const VelocityField& f) {
    ScalarField out(f.grid(), Stagger::cell);
    kernels::omp::divergence(f, out);
    return out;
}

VelocityField gradient(const ScalarField& phi, BoundaryCondition bc) {
    if (phi.stagger() != Stagger::cell) throw ConfigError("gradient: expects a cell field");
    const Grid& g = phi.grid();
    VelocityField out(g, bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.u(i, j) = (phi(i, j) - phi.at(i - 1, j)) / g.dx;
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.v(i, j) = (phi(i, j) - phi(i, j - 1)) / g.dy;
    return out;
}

VelocityField rot(const ScalarField& psi, BoundaryCondition bc) {
    if (psi.stagger() != Stagger::node) throw ConfigError("rot: expects a node field");
    const Grid& g = psi.grid();
    VelocityField out(g, bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.u(i, j) = (psi(i, j + 1) - psi(i, j)) / g.dy;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.v(i, j) = -(psi.at(i + 1, j) - psi(i, j)) / g.dx;
    return out;
}

ScalarField node_laplacian(const ScalarField& psi) {
    if (psi.stagger() != Stagger::node) throw ConfigError("node_laplacian: expects a node field");
    const Grid& g = psi.grid();
    ScalarField out(g, Stagger::node);
    const double idx2 = 1.0 / (g.dx * g.dx), idy2 = 1.0 / (g.dy * g.dy);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double c = psi(i, j);
            out(i, j) = (psi.at(i + 1, j) - 2.0 * c + psi.at(i - 1, j)) * idx2 +
                        (psi(i, j + 1) - 2.0 * c + psi(i, j - 1)) * idy2;
        }
    return out;
}

VelocityField advect(const VelocityField& a, const VelocityField& w) {
    require_conforming(a, w, "advect");
    VelocityField out(a.grid(), w.bc);
    kernels::omp::advect(a, w, out);
    return out;
}

VelocityField laplacian(const VelocityField& w) {
    VelocityField out(w.grid(), w.bc);
    kernels::omp::laplacian(w, out);
    return out;
}

ScalarField jacobian(const ScalarField& psi, const ScalarField& omega) {
    require_conforming(psi, omega, "jacobian");
    if (psi.stagger() != Stagger::node) throw ConfigError("jacobian: expects node fields");
    ScalarField out(psi.grid(), Stagger::node);
    kernels::omp::arakawa(psi, omega, out);
    out *= -1.0;
    return out;
}

GradientTensor gradient_tensor(const VelocityField& f) {
    const Grid& g = f.grid();
    const int nx = g.nx, ny = g.ny;
    GradientTensor t{ScalarField(g, Stagger::cell), ScalarField(g, Stagger::cell), ScalarField(g, Stagger::node),
                     ScalarField(g, Stagger::node)};

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            t.dudx(i, j) = (f.u.at(i + 1, j) - f.u(i, j)) / g.dx;
            t.dvdy(i, j) = (f.v(i, j + 1) - f.v(i, j)) / g.dy;
        }

    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) t.dudy(i, j) = (f.u(i, j) - f.u(i, j - 1)) / g.dy;
    for (int i = 0; i < nx; ++i) {
        if (f.bc == BoundaryCondition::no_slip) {
            t.dudy(i, 0) = 2.0 * f.u(i, 0) / g.dy;
            t.dudy(i, ny) = -2.0 * f.u(i, ny - 1) / g.dy;
        } else {
            t.dudy(i, 0) = (-2.0 * f.u(i, 0) + 3.0 * f.u(i, 1) - f.u(i, 2)) / g.dy;
            t.dudy(i, ny) = (2.0 * f.u(i, ny - 1) - 3.0 * f.u(i, ny - 2) + f.u(i, ny - 3)) / g.dy;
        }
    }

    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i) t.dvdx(i, j) = (f.v(i, j) - f.v.at(i - 1, j)) / g.dx;
    return t;
}

double inner(const ScalarField& a, const ScalarField& b) {
    require_conforming(a, b, "inner");
    return kernels::omp::dot_rows(a, b).total();
}

double inner(const VelocityField& a, const VelocityField& b) { return inner(a.u, b.u) + inner(a.v, b.v); }

double inner(const GradientTensor& a, const GradientTensor& b) {
    return inner(a.dudx, b.dudx) + inner(a.dvdy, b.dvdy) + inner(a.dudy, b.dudy) + inner(a.dvdx, b.dvdx);
}

double trilinear_form(const VelocityField& a, const VelocityField& b, const VelocityField& c) {
    require_conforming(a, b, "trilinear_form");
    require_conforming(a, c, "trilinear_form");
    return inner(advect(a, b), c);
}

}  // namespace kato
