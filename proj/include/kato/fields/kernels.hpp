#pragma once

// Stencil kernels in two flavours.
//
// serial:: plain double loops with periodic wrapping through ScalarField::at.
//          These are the reference implementations the tests compare against.
// omp::    row-parallel versions (OpenMP) working on raw row pointers. Each output
//          sample is written by exactly one thread and reductions accumulate one
//          partial per row, summed afterwards in row order, so results are
//          bit-identical to serial:: for any thread count.
//
// Inside an enclosing parallel region (ensemble paths) the omp:: versions run
// on a team of one since nested parallelism is left disabled.

#include "kato/fields/grid.hpp"

namespace kato::kernels {

/// Per-row sums of squares (row_weight applied), one entry per row.
struct RowPartials {
    std::vector<double> rows;
    double total() const;
};

namespace serial {

/// Flux-form advection out = N(a) w on the MAC layout (wall rows of out.v are zero).
void advect(const VelocityField& a, const VelocityField& w, VelocityField& out);
/// No-slip vector Laplacian (ghost u at the walls, v Dirichlet on wall rows).
void laplacian(const VelocityField& w, VelocityField& out);
void divergence(const VelocityField& f, ScalarField& out);
/// Arakawa form of d(psi)/dx d(omega)/dy - d(psi)/dy d(omega)/dx on interior nodes.
void arakawa(const ScalarField& psi, const ScalarField& omega, ScalarField& out);
/// Weighted dot product, per row.
RowPartials dot_rows(const ScalarField& a, const ScalarField& b);

}  // namespace serial

namespace omp {

void advect(const VelocityField& a, const VelocityField& w, VelocityField& out);
void laplacian(const VelocityField& w, VelocityField& out);
void divergence(const VelocityField& f, ScalarField& out);
void arakawa(const ScalarField& psi, const ScalarField& omega, ScalarField& out);
RowPartials dot_rows(const ScalarField& a, const ScalarField& b);

}  // namespace omp

/// Number of OpenMP threads the omp:: kernels will use at top level.
int max_threads();
void set_threads(int n);

}  // namespace kato::kernels
