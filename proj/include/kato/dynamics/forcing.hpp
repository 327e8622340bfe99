#pragma once

#include "kato/dynamics/stream.hpp"
#include "kato/fields/grid.hpp"

namespace kato {

/// f(t) = cos(frequency t) rot(psi_f). An empty stream means f = 0.
struct ForcingSpec {
    StreamFunction stream;
    double frequency = 0.0;

    bool active() const { return !stream.terms.empty(); }
    double factor(double t) const;
};

/// ForcingSpec sampled on a grid: the velocity profile and its curl (interior nodes
/// from the discrete Laplacian of psi_f, wall nodes from the closed form).
struct PreparedForcing {
    ForcingSpec spec;
    VelocityField velocity;
    ScalarField curl;

    static PreparedForcing make(const ForcingSpec& spec, const Grid& grid);
    double factor(double t) const { return spec.factor(t); }
};

}  // namespace kato
