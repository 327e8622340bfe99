#include "kato/diagnostics/stability.hpp"

#include <algorithm>
#include <cmath>

#include "kato/diagnostics/stats.hpp"
#include "kato/errors.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

namespace {

void require_twins(const EulerTrajectory& u, const EulerTrajectory& ubar) {
    if (u.snapshots.empty() || u.snapshots.size() != ubar.snapshots.size() ||
        u.checkpoint_steps != ubar.checkpoint_steps || u.times != ubar.times)
        throw ConfigError("gronwall check: trajectories have different time grids or checkpoints");
    if (!(u.snapshots.front().grid() == ubar.snapshots.front().grid()))
        throw ConfigError("gronwall check: trajectories live on different grids");
}

GronwallCheck evaluate(const EulerTrajectory& u, const EulerTrajectory& ubar, double grad_bound, double force_term,
                       double margin) {
    require_twins(u, ubar);
    GronwallCheck c;
    c.grad_bound = grad_bound;
    c.force_term = force_term;
    const VelocityField d0 = u.snapshots.front() - ubar.snapshots.front();
    const double initial = inner(d0, d0);
    for (std::size_t k = 0; k < u.snapshots.size(); ++k) {
        const double t = u.times[u.checkpoint_steps[k]];
        const VelocityField d = u.snapshots[k] - ubar.snapshots[k];
        const double lhs = inner(d, d);
        const double rhs = std::exp(2.0 * t * grad_bound) * (initial + force_term);
        c.times.push_back(t);
        c.lhs.push_back(lhs);
        c.rhs.push_back(rhs);
        if (rhs > 0.0) c.worst_ratio = std::max(c.worst_ratio, lhs / rhs);
        if (lhs > (1.0 + margin) * rhs && c.satisfied) {
            c.satisfied = false;
            c.first_violation = t;
        }
    }
    return c;
}

double factor_integral(const PreparedForcing& a, const PreparedForcing& b, const std::vector<double>& times) {
    std::vector<double> prod(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) prod[j] = a.factor(times[j]) * b.factor(times[j]);
    return running_trapezoid(prod, times).back();
}

double profile_inner(const PreparedForcing& a, const PreparedForcing& b) {
    if (!a.spec.active() || !b.spec.active()) return 0.0;
    return inner(a.velocity, b.velocity);
}

}  // namespace

double max_gradient(const EulerTrajectory& traj) {
    double g = 0.0;
    for (double x : traj.grad_linf) g = std::max(g, x);
    return g;
}

GronwallCheck gronwall_bound_check(const EulerTrajectory& u, const EulerTrajectory& ubar, double grad_bound,
                                   double margin) {
    return evaluate(u, ubar, grad_bound, 0.0, margin);
}

double force_norm(const PreparedForcing& f, const std::vector<double>& times) {
    if (!f.spec.active() || times.size() < 2) return 0.0;
    return std::sqrt(std::max(0.0, factor_integral(f, f, times) * profile_inner(f, f)));
}

double force_difference_norm(const PreparedForcing& f, const PreparedForcing& g, const std::vector<double>& times) {
    if (times.size() < 2) return 0.0;
    const double sq = factor_integral(f, f, times) * profile_inner(f, f) -
                      2.0 * factor_integral(f, g, times) * profile_inner(f, g) +
                      factor_integral(g, g, times) * profile_inner(g, g);
    return std::sqrt(std::max(0.0, sq));
}

GronwallCheck forced_gronwall_bound_check(const EulerTrajectory& u, const EulerTrajectory& ubar,
                                          const PreparedForcing& f, const PreparedForcing& fbar, double grad_bound,
                                          double margin) {
    require_twins(u, ubar);
    const double horizon = u.times.back() - u.times.front();
    const double nf = force_norm(f, u.times);
    const double nfbar = force_norm(fbar, u.times);
    const double diff = force_difference_norm(f, fbar, u.times);
    const double e0 = inner(u.snapshots.front(), u.snapshots.front());
    const double ebar0 = inner(ubar.snapshots.front(), ubar.snapshots.front());
    const double term = 2.0 * std::sqrt(horizon) * diff *
                        (std::sqrt(2.0 * e0 + 4.0 * horizon * nf * nf) +
                         std::sqrt(2.0 * ebar0 + 4.0 * horizon * nfbar * nfbar));
    return evaluate(u, ubar, grad_bound, term, margin);
}

EnergyEstimate energy_estimate_check(const EulerTrajectory& traj, const PreparedForcing& f) {
    if (traj.energy.empty()) throw ConfigError("energy estimate: empty trajectory");
    EnergyEstimate e;
    e.sup_energy = *std::max_element(traj.energy.begin(), traj.energy.end());
    const double horizon = traj.times.back() - traj.times.front();
    const double nf = force_norm(f, traj.times);
    e.bound = 2.0 * traj.energy.front() + 4.0 * horizon * nf * nf;
    e.margin = e.bound - e.sup_energy;
    e.satisfied = e.sup_energy <= e.bound;
    return e;
}

}  // namespace kato
