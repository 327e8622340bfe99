#pragma once

#include "kato/fields/grid.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

double l2_norm(const ScalarField& f);
double l2_norm(const VelocityField& f);
double h1_seminorm(const VelocityField& f);
double linf_norm(const ScalarField& f);
double linf_norm(const VelocityField& f);
/// Largest gradient-tensor component magnitude.
double gradient_linf(const VelocityField& f);

/// Squared L2 norm of the gradient over the whole channel and over a layer.
struct DissipationPair {
    double full = 0.0;
    double layer = 0.0;
};
DissipationPair dissipation(const VelocityField& f, double layer_delta);

/// Boundary-layer norms of a velocity field over Gamma_delta.
///
/// hardy_l2 is ||f / rho||_{L2(Gamma_delta)} with samples closer to the wall than
/// hardy_cutoff = dy/2 left out of the sum (the 1/rho weight is not integrable by
/// the midpoint rule there); hardy_quotient = hardy_l2 / grad_l2_layer.
struct LayerNorms {
    double l2_layer = 0.0;
    double grad_l2_layer = 0.0;
    double hardy_l2 = 0.0;
    double hardy_quotient = 0.0;
    double rho_grad_linf = 0.0;
    double rho2_grad_linf = 0.0;
    double rho_grad_l2 = 0.0;

    double grad_linf = 0.0;
    double linf = 0.0;

    double hardy_cutoff = 0.0;
    bool under_resolved = false;
};

LayerNorms layer_norms(const VelocityField& f, const LayerRegion& region, const DistanceField& rho);

}  // namespace kato
