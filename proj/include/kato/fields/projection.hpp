#pragma once

#include <memory>

#include "kato/fields/grid.hpp"
#include "kato/fields/poisson.hpp"

namespace kato {

/// Shared solver for (grid, closure, options). Solvers are built once and reused.
std::shared_ptr<const SeparableSolver> cached_solver(const Grid& grid, WallClosure closure,
                                                     const SolverOptions& options = {});

/// Discrete Leray projection onto divergence-free fields with zero wall-normal
/// velocity. The result keeps the bc tag of f.
VelocityField leray_project(const VelocityField& f, const SolverOptions& options = {},
                            SolveStats* stats = nullptr);

}  // namespace kato
