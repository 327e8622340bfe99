#include "kato/ensemble/audit.hpp"

#include <algorithm>
#include <cmath>

#include "kato/diagnostics/stats.hpp"
#include "kato/errors.hpp"

namespace kato {

double observed_order(double a, double b, double ha, double hb) { return std::log(a / b) / std::log(ha / hb); }

EnergyAudit energy_audit(const ExperimentConfig& config, const std::vector<double>& dts, int weak_paths) {
    if (dts.empty()) throw ConfigError("energy audit needs at least one dt");
    if (config.nu_list.empty()) throw ConfigError("energy audit needs a viscosity");
    const double nu = config.nu_list.front();
    const NoiseModel model = make_noise_model(config);
    EnergyAudit audit;

    for (double dt : dts) {
        ExperimentConfig c = config;
        c.dt = dt;
        c.nu_list = {nu};
        c.validate();
        std::vector<TrajectoryRecord> ens = run_ensemble(c, nu);
        AuditLevel level;
        level.dt = dt;
        std::vector<TrajectoryRecord> ok;
        for (auto& r : ens) {
            if (r.failed)
                ++level.paths_failed;
            else
                ok.push_back(std::move(r));
        }
        if (ok.empty()) throw NumericalError("energy audit: every path failed at dt = " + std::to_string(dt));

        level.residual = energy_equality_residual(ok, model);
        level.max_abs_residual = level.residual.max_abs();
        level.drift_reference_error =
            std::abs(level.residual.drift.back() - c.horizon * nu * static_cast<double>(model.n_modes));

        const TimeGrid tg = TimeGrid::make(c.horizon, dt);
        std::vector<BrownianPath> paths;
        for (const TrajectoryRecord& r : ok) {
            BrownianPath p = sample_path(model, tg.n_steps, dt, r.path_seed);
            fit_last_step(p, tg);
            paths.push_back(std::move(p));
        }
        level.checkpoint_steps = checkpoint_steps(tg.n_steps, c.checkpoints);
        level.ito = ito_consistency(ok, paths, model, level.checkpoint_steps);
        level.uniform = uniform_energy_check(ok, model);

        ExperimentConfig dense = c;
        dense.dense_snapshots = true;
        MovingTestField phi;
        phi.profile = test_dictionary(c.grid()).front();
        const double horizon = c.horizon;
        phi.g = [horizon](double t) { return 1.0 - 0.5 * t / horizon; };
        phi.dg = [horizon](double) { return -0.5 / horizon; };
        for (int p = 0; p < weak_paths; ++p) {
            const TrajectoryRecord r = run_path(dense, nu, p, model);
            if (r.failed) continue;
            for (double x : weak_formulation_residual(r, phi, model))
                level.weak_residual = std::max(level.weak_residual, x);
        }
        audit.levels.push_back(std::move(level));
    }

    for (std::size_t i = 1; i < audit.levels.size(); ++i) {
        const AuditLevel& a = audit.levels[i - 1];
        const AuditLevel& b = audit.levels[i];
        audit.order_residual.push_back(observed_order(a.max_abs_residual, b.max_abs_residual, a.dt, b.dt));
        audit.order_ito.push_back(observed_order(a.ito.mean_abs_final, b.ito.mean_abs_final, a.dt, b.dt));
        audit.order_weak.push_back(observed_order(a.weak_residual, b.weak_residual, a.dt, b.dt));
    }
    return audit;
}

}  // namespace kato
