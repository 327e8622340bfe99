#pragma once

#include <vector>

#include "kato/fields/grid.hpp"

namespace kato {

/// sin(pi x) and cos(pi x), exact at integer x.
double sinpi(double x);
double cospi(double x);

/// amplitude * X(2 pi m x / Lx) * sin(n pi y), X = cos or sin. Vanishes on both walls.
struct StreamTerm {
    double amplitude = 0.0;
    int m = 0;
    bool sine = false;
    int n = 1;
};

/// Stream function given as a finite sum of wall-vanishing trigonometric terms,
/// with closed-form velocity and vorticity omega = -Laplacian(psi).
struct StreamFunction {
    double length_x = 1.0;
    std::vector<StreamTerm> terms;

    double psi(double x, double y) const;
    double omega(double x, double y) const;
    double u(double x, double y) const;
    double v(double x, double y) const;

    ScalarField sample_psi(const Grid& g) const;
    ScalarField sample_omega(const Grid& g) const;
    /// Point samples of the analytic velocity on the faces.
    VelocityField sample_velocity(const Grid& g, BoundaryCondition bc) const;

    StreamFunction scaled(double c) const;
};

StreamFunction operator+(const StreamFunction& a, const StreamFunction& b);

}  // namespace kato
