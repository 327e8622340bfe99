#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "kato/fields/grid.hpp"

namespace kato {

/// How the y-direction of a separable operator closes at the walls.
enum class WallClosure {
    neumann_cell,    // cell unknowns, zero flux (pressure)
    dirichlet_cell,  // cell/u-face unknowns, zero value half a cell beyond (ghost)
    dirichlet_node,  // node/v-face unknowns on rows 1..ny-1, zero on wall rows
};

enum class SolverKind { direct, iterative };

struct SolverOptions {
    SolverKind kind = SolverKind::direct;
    double tolerance = 1e-10;
    int max_iterations = 5000;
};

struct SolveStats {
    SolverKind kind = SolverKind::direct;
    int iterations = 0;
    double residual = 0.0;
};

/// Solves (alpha I - beta L) x = b where L is the 5-point Laplacian, periodic in x,
/// closed in y by WallClosure. The direct path transforms rows with a real FFT and
/// runs one tridiagonal solve per wavenumber; the iterative path is matrix-free
/// conjugate gradients with a relative-residual stopping rule.
///
/// For alpha = 0 with neumann_cell the operator is singular; the right-hand side is
/// projected onto zero mean and the returned solution has zero mean.
///
/// Instances are immutable after construction and safe to share between threads.
class SeparableSolver {
public:
    SeparableSolver(const Grid& grid, WallClosure closure, SolverOptions options = {});
    ~SeparableSolver();
    SeparableSolver(const SeparableSolver&) = delete;
    SeparableSolver& operator=(const SeparableSolver&) = delete;

    /// rhs and the result use the stagger implied by the closure (cell/u_face for
    /// *_cell, node/v_face for dirichlet_node; wall rows are ignored and returned as 0).
    ScalarField solve(double alpha, double beta, const ScalarField& rhs, SolveStats* stats = nullptr) const;

    /// Applies (alpha I - beta L) to x.
    ScalarField apply(double alpha, double beta, const ScalarField& x) const;

    const Grid& grid() const { return grid_; }
    WallClosure closure() const { return closure_; }
    const SolverOptions& options() const { return options_; }

private:
    int first_row() const;
    int row_count() const;
    ScalarField solve_direct(double alpha, double beta, const ScalarField& rhs) const;
    ScalarField solve_iterative(double alpha, double beta, const ScalarField& rhs, SolveStats* stats) const;

    Grid grid_;
    WallClosure closure_;
    SolverOptions options_;
    std::vector<double> eig_x_;  // periodic second-difference eigenvalues per wavenumber
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

}  // namespace kato
