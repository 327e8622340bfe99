#include "kato/fields/projection.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "kato/fields/operators.hpp"

namespace kato {

std::shared_ptr<const SeparableSolver> cached_solver(const Grid& grid, WallClosure closure,
                                                     const SolverOptions& options) {
    using Key = std::tuple<int, int, double, int, int, double, int>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const SeparableSolver>> cache;

    const Key key{grid.nx,
                  grid.ny,
                  grid.length_x,
                  static_cast<int>(closure),
                  static_cast<int>(options.kind),
                  options.tolerance,
                  options.max_iterations};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto solver = std::make_shared<const SeparableSolver>(grid, closure, options);
    cache.emplace(key, solver);
    return solver;
}

VelocityField leray_project(const VelocityField& f, const SolverOptions& options, SolveStats* stats) {
    const Grid& g = f.grid();
    VelocityField w = f;
    for (int i = 0; i < g.nx; ++i) {
        w.v(i, 0) = 0.0;
        w.v(i, g.ny) = 0.0;
    }
    ScalarField rhs = divergence(w);
    rhs *= -1.0;
    const auto solver = cached_solver(g, WallClosure::neumann_cell, options);
    const ScalarField phi = solver->solve(0.0, 1.0, rhs, stats);
    w -= gradient(phi, f.bc);
    return w;
}

}  // namespace kato
