#pragma once

#include "kato/fields/grid.hpp"

namespace kato {

/// Cell-centred MAC divergence. Wall rows of v are used as stored.
ScalarField divergence(const VelocityField& f);

/// MAC gradient of a cell field onto interior faces; wall rows of v are zero.
VelocityField gradient(const ScalarField& phi, BoundaryCondition bc = BoundaryCondition::no_penetration);

/// Discrete rot(psi) = (d psi/dy, -d psi/dx) of a node field. Divergence-free to round-off.
VelocityField rot(const ScalarField& psi, BoundaryCondition bc = BoundaryCondition::no_penetration);

/// Five-point Laplacian of a node field on interior rows (wall rows are zero).
ScalarField node_laplacian(const ScalarField& psi);

/// Flux-form advection N(a) w. For discretely divergence-free a with zero wall-normal
/// component, <N(a) w, w> = 0 for every w with zero wall-normal component.
VelocityField advect(const VelocityField& a, const VelocityField& w);

/// No-slip vector Laplacian used by the implicit diffusion step.
VelocityField laplacian(const VelocityField& w);

/// Arakawa Jacobian written as transport: u . grad(omega) with u = rot(psi).
ScalarField jacobian(const ScalarField& psi, const ScalarField& omega);

/// Velocity gradient tensor at its natural stagger points.
///   du/dx, dv/dy at cells; du/dy, dv/dx at nodes (wall rows included).
/// Wall du/dy: no_slip fields use the ghost difference 2u/dy (the same stencil as
/// laplacian()); other fields use the one-sided second-order extrapolation.
struct GradientTensor {
    ScalarField dudx;
    ScalarField dvdy;
    ScalarField dudy;
    ScalarField dvdx;
};

GradientTensor gradient_tensor(const VelocityField& f);

/// Weighted L2 inner products (trapezoid weights on wall rows).
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VelocityField& a, const VelocityField& b);
double inner(const GradientTensor& a, const GradientTensor& b);

/// Discrete b(a, b, c) = integral of (a . grad b) . c, consistent with advect().
double trilinear_form(const VelocityField& a, const VelocityField& b, const VelocityField& c);

}  // namespace kato
