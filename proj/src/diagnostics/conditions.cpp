#include "kato/diagnostics/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "kato/diagnostics/energy.hpp"
#include "kato/errors.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

namespace {

std::vector<const TrajectoryRecord*> usable(const std::vector<TrajectoryRecord>& ens) {
    std::vector<const TrajectoryRecord*> out;
    for (const TrajectoryRecord& r : ens)
        if (!r.failed) out.push_back(&r);
    if (out.empty()) throw ConfigError("every path of the ensemble failed");
    return out;
}

double time_integral(const std::vector<double>& values, const std::vector<double>& times) {
    return running_trapezoid(values, times).back();
}

}  // namespace

KatoFunctionals kato_functionals(const std::vector<TrajectoryRecord>& ens, const Grid& grid) {
    const auto recs = usable(ens);
    KatoFunctionals k;
    k.layer_delta = recs.front()->layer_delta;
    k.under_resolved = k.layer_delta <= grid.dy;
    std::vector<double> total, layer;
    for (const TrajectoryRecord* r : recs) {
        if (r->layer_delta != k.layer_delta) throw ConfigError("kato functionals: records use different layer widths");
        total.push_back(r->nu * time_integral(r->enstrophy, r->times));
        layer.push_back(r->nu * time_integral(r->layer_dissipation, r->times));
    }
    k.total = estimate_mean(total);
    k.layer = estimate_mean(layer);
    return k;
}

ConvergenceMetrics convergence_metrics(const std::vector<TrajectoryRecord>& ens, const EulerTrajectory& euler) {
    const auto recs = usable(ens);
    const std::size_t nc = euler.snapshots.size();
    if (nc == 0 || euler.checkpoint_steps.size() != nc) throw ConfigError("convergence metrics: Euler trajectory has no checkpoints");
    const Grid& grid = euler.snapshots.front().grid();

    ConvergenceMetrics m;
    for (int s : euler.checkpoint_steps) m.checkpoint_times.push_back(euler.times[s]);
    for (const TrajectoryRecord* r : recs) {
        if (r->snapshots.size() != nc) throw ConfigError("convergence metrics: checkpoint counts differ");
        for (std::size_t c = 0; c < nc; ++c) {
            if (!(r->snapshots[c].grid() == grid)) throw ConfigError("convergence metrics: grid mismatch");
            const double t = r->times[r->checkpoint_steps[c]];
            if (std::abs(t - m.checkpoint_times[c]) > 1e-9 * std::max(1.0, std::abs(t)))
                throw ConfigError("convergence metrics: checkpoint times differ");
        }
    }

    const std::vector<VelocityField> dict = test_dictionary(grid);
    std::vector<std::vector<double>> gaps(recs.size(), std::vector<double>(nc));
    std::vector<double> ref(dict.size());
    std::vector<std::vector<double>> proj(recs.size(), std::vector<double>(dict.size()));
    m.weak_gaps.assign(nc, std::vector<double>(dict.size()));
    m.weak_se.assign(nc, std::vector<double>(dict.size()));

    for (std::size_t c = 0; c < nc; ++c) {
        const VelocityField& ubar = euler.snapshots[c];
        for (std::size_t d = 0; d < dict.size(); ++d) ref[d] = inner(ubar, dict[d]);
        for (std::size_t p = 0; p < recs.size(); ++p) {
            const VelocityField diff = recs[p]->snapshots[c] - ubar;
            gaps[p][c] = inner(diff, diff);
            for (std::size_t d = 0; d < dict.size(); ++d) proj[p][d] = inner(recs[p]->snapshots[c], dict[d]);
        }
        std::vector<double> col(recs.size());
        for (std::size_t d = 0; d < dict.size(); ++d) {
            for (std::size_t p = 0; p < recs.size(); ++p) col[p] = proj[p][d];
            const MeanEstimate e = estimate_mean(col);
            m.weak_gaps[c][d] = std::abs(e.mean - ref[d]);
            m.weak_se[c][d] = e.se;
            m.weak_gap_max = std::max(m.weak_gap_max, m.weak_gaps[c][d]);
        }
        for (std::size_t p = 0; p < recs.size(); ++p) col[p] = gaps[p][c];
        const MeanEstimate e = estimate_mean(col);
        m.mean_gap.push_back(e.mean);
        if (c == 0 || e.mean > m.m1.mean) {
            m.m1 = e;
            m.m1_checkpoint = static_cast<int>(c);
        }
    }
    std::vector<double> maxima;
    for (const auto& g : gaps) maxima.push_back(*std::max_element(g.begin(), g.end()));
    m.m2 = estimate_mean(maxima);
    return m;
}

bool ConditionReport::invariants_hold(double rel_tol) const {
    const double m_slack = rel_tol * std::max(m1.mean, m2.mean);
    const double d_slack = rel_tol * std::max(d_total.mean, d_layer.mean);
    return m1.mean >= 0.0 && m2.mean + m_slack >= m1.mean && d_layer.mean >= 0.0 &&
           d_total.mean + d_slack >= d_layer.mean;
}

ConditionReport condition_report(const std::vector<TrajectoryRecord>& ens, const EulerTrajectory& euler,
                                 const Grid& grid) {
    ConditionReport r;
    const auto recs = usable(ens);
    r.nu = recs.front()->nu;
    r.paths_used = static_cast<int>(recs.size());
    r.paths_failed = static_cast<int>(ens.size() - recs.size());
    const KatoFunctionals k = kato_functionals(ens, grid);
    r.layer_delta = k.layer_delta;
    r.under_resolved = k.under_resolved;
    r.d_total = k.total;
    r.d_layer = k.layer;
    r.metrics = convergence_metrics(ens, euler);
    r.m1 = r.metrics.m1;
    r.m2 = r.metrics.m2;
    r.weak_gap_max = r.metrics.weak_gap_max;
    r.checkpoints = static_cast<int>(euler.snapshots.size());
    return r;
}

}  // namespace kato
