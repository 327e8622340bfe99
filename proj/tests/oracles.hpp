#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "kato/fields/grid.hpp"
#include "support.hpp"

namespace kato::test {

// Unknown layout for the dense oracle: u faces, then interior v faces, then cell multipliers.
struct KktLayout {
    int nu, nv, nc;
    explicit KktLayout(const Grid& g) : nu(g.nx * g.ny), nv(g.nx * (g.ny - 1)), nc(g.nx * g.ny) {}
    int u(const Grid& g, int i, int j) const { return j * g.nx + g.wrap(i); }
    int v(const Grid& g, int i, int j) const { return nu + (j - 1) * g.nx + g.wrap(i); }
    int c(const Grid& g, int i, int j) const { return nu + nv + j * g.nx + i; }
};

inline VelocityField dense_projection(const VelocityField& f) {
    const Grid& g = f.grid();
    const KktLayout L(g);
    const int n = L.nu + L.nv + L.nc;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < L.nu + L.nv; ++k) K(k, k) = 1.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int row = L.c(g, i, j);
            auto couple = [&](int col, double w) {
                K(row, col) += w;
                K(col, row) += w;
            };
            couple(L.u(g, i + 1, j), 1.0 / g.dx);
            couple(L.u(g, i, j), -1.0 / g.dx);
            if (j + 1 < g.ny) couple(L.v(g, i, j + 1), 1.0 / g.dy);
            if (j > 0) couple(L.v(g, i, j), -1.0 / g.dy);
        }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rhs(L.u(g, i, j)) = f.u(i, j);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rhs(L.v(g, i, j)) = f.v(i, j);
    const Eigen::VectorXd x = K.completeOrthogonalDecomposition().solve(rhs);
    VelocityField out(g, f.bc);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.u(i, j) = x(L.u(g, i, j));
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.v(i, j) = x(L.v(g, i, j));
    return out;
}

// Face-by-face scatter of the centred fluxes, summed against c over every control volume.
inline double brute_trilinear(const VelocityField& a, const VelocityField& w, const VelocityField& c) {
    const Grid& g = a.grid();
    const int nx = g.nx, ny = g.ny;
    auto U = [&](const VelocityField& f, int i, int j) { return f.u.at(((i % nx) + nx) % nx, j); };
    auto V = [&](const VelocityField& f, int i, int j) { return f.v.at(((i % nx) + nx) % nx, j); };
    const bool slip = w.bc != BoundaryCondition::no_slip;
    double sum = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            // x-face at the cell centre between u(i) and u(i+1)
            const double fx = 0.25 * (U(a, i, j) + U(a, i + 1, j)) * (U(w, i, j) + U(w, i + 1, j)) / g.dx;
            sum += fx * (U(c, i, j) - U(c, i + 1, j));
            // y-face at node (i, j+1) between u rows j and j+1, or the wall
            const double ay = 0.5 * (V(a, i - 1, j + 1) + V(a, i, j + 1));
            if (j + 1 < ny) {
                const double fy = 0.5 * ay * (U(w, i, j) + U(w, i, j + 1)) / g.dy;
                sum += fy * (U(c, i, j) - U(c, i, j + 1));
            } else {
                sum += ay * (slip ? U(w, i, j) : 0.0) / g.dy * U(c, i, j);
            }
            if (j == 0) {
                const double as = 0.5 * (V(a, i - 1, 0) + V(a, i, 0));
                sum -= as * (slip ? U(w, i, 0) : 0.0) / g.dy * U(c, i, 0);
            }
        }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            // y-face at the cell centre between v rows j and j+1
            const double fy = 0.25 * (V(a, i, j) + V(a, i, j + 1)) * (V(w, i, j) + V(w, i, j + 1)) / g.dy;
            if (j > 0) sum += fy * V(c, i, j);
            if (j + 1 < ny) sum -= fy * V(c, i, j + 1);
            if (j == 0) continue;
            // x-face at node (i+1, j) between v(i) and v(i+1)
            const double fx = 0.25 * (U(a, i + 1, j - 1) + U(a, i + 1, j)) * (V(w, i, j) + V(w, i + 1, j)) / g.dx;
            sum += fx * (V(c, i, j) - V(c, i + 1, j));
        }
    return sum * g.cell_area();
}

// Non-trigonometric fields for the antisymmetry refinement study. Trigonometric pairs make
// sum div_h(a) |w|^2 vanish by discrete orthogonality and hide the truncation error.
inline VelocityField skew_carrier(const Grid& g) {
    const double k = 2 * pi / g.length_x;
    auto P = [=](double x) { return std::exp(std::sin(k * x)); };
    auto dP = [=](double x) { return k * std::cos(k * x) * std::exp(std::sin(k * x)); };
    auto S = [](double y) { return std::pow(std::sin(pi * y), 2) * (1 + y); };
    auto dS = [](double y) { return pi * std::sin(2 * pi * y) * (1 + y) + std::pow(std::sin(pi * y), 2); };
    return VelocityField::sample(
        g, BoundaryCondition::no_penetration, [=](double x, double y) { return P(x) * dS(y); },
        [=](double x, double y) { return -dP(x) * S(y); });
}

inline VelocityField skew_transported(const Grid& g) {
    const double k = 2 * pi / g.length_x;
    return VelocityField::sample(
        g, BoundaryCondition::no_penetration,
        [=](double x, double y) { return std::cos(k * x) * std::exp(y) + 0.3 * std::sin(2 * k * x); },
        [=](double x, double y) {
            return std::sin(pi * y) * std::sin(k * x) * y + 0.2 * std::cos(k * x) * y * (1 - y);
        });
}

}  // namespace kato::test
