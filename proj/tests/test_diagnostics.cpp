#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kato/diagnostics/conditions.hpp"
#include "kato/diagnostics/energy.hpp"
#include "kato/diagnostics/stability.hpp"
#include "kato/diagnostics/stats.hpp"
#include "kato/ensemble/ensemble.hpp"
#include "kato/errors.hpp"
#include "kato/fields/norms.hpp"
#include "support.hpp"

using namespace kato;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.nx = c.ny = 16;
    c.horizon = 0.1;
    c.dt = 5e-3;
    c.nu_list = {0.02};
    c.n_modes = 2;
    c.ensemble_size = 6;
    c.checkpoints = 4;
    c.seed = 11;
    return c;
}

ExperimentConfig zero_config() {
    ExperimentConfig c = small_config();
    c.ic.kind = IcKind::zero;
    c.n_modes = 0;
    return c;
}

std::vector<BrownianPath> paths_of(const ExperimentConfig& c, const NoiseModel& m,
                                   const std::vector<TrajectoryRecord>& ens) {
    const TimeGrid tg = TimeGrid::make(c.horizon, c.dt);
    std::vector<BrownianPath> out;
    for (const TrajectoryRecord& r : ens) {
        BrownianPath p = sample_path(m, tg.n_steps, c.dt, r.path_seed);
        fit_last_step(p, tg);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

TEST_CASE("statistics helpers") {
    const std::vector<double> v{1e16, 1.0, -1e16, 3.0, 0.5};
    std::vector<double> w = v;
    std::reverse(w.begin(), w.end());
    CHECK(ordered_sum(v) == ordered_sum(w));

    const std::vector<double> one{2.5};
    CHECK(estimate_mean(one).mean == 2.5);
    CHECK(estimate_mean(one).se == 0.0);
    const std::vector<double> two{1.0, 3.0};
    CHECK(estimate_mean(two).se == doctest::Approx(1.0));

    const std::vector<int> c4 = checkpoint_steps(100, 4), c8 = checkpoint_steps(100, 8);
    CHECK(c4 == std::vector<int>{0, 25, 50, 75, 100});
    for (int s : c4) CHECK(std::find(c8.begin(), c8.end(), s) != c8.end());
    CHECK(checkpoint_steps(3, 8) == std::vector<int>{0, 1, 2, 3});

    const std::vector<double> t{0.0, 0.5, 1.5}, f{1.0, 1.0, 3.0};
    const std::vector<double> integral = running_trapezoid(f, t);
    CHECK(integral.back() == doctest::Approx(0.5 + 2.0));
}

TEST_CASE("all residuals vanish on the zero trajectory") {
    const ExperimentConfig c = zero_config();
    const NoiseModel m = make_noise_model(c);
    const std::vector<TrajectoryRecord> ens = run_ensemble(c, 0.02);
    const EnergyResidual r = energy_equality_residual(ens, m);
    CHECK(r.max_abs() <= 1e-14);
    for (const TrajectoryRecord& rec : ens) {
        const std::vector<double> ito = ito_residual(rec, sample_path(m, rec.n_steps(), c.dt, rec.path_seed), m);
        for (double x : ito) CHECK(std::abs(x) <= 1e-14);
    }
    const UniformEnergyCheck u = uniform_energy_check(ens, m);
    CHECK(u.lhs == 0.0);
    CHECK(u.rhs_bound == 0.0);
    CHECK(u.satisfied);
    const KatoFunctionals k = kato_functionals(ens, c.grid());
    CHECK(k.total.mean == 0.0);
    CHECK(k.layer.mean == 0.0);

    ExperimentConfig dense = c;
    dense.dense_snapshots = true;
    MovingTestField phi;
    phi.profile = test_dictionary(c.grid()).front();
    phi.g = [](double t) { return 1.0 - t / 0.1; };
    phi.dg = [](double) { return -1.0 / 0.1; };
    for (double x : weak_formulation_residual(run_path(dense, 0.02, 0, m), phi, m)) CHECK(std::abs(x) <= 1e-14);
}

TEST_CASE("energy residual of a stochastic ensemble") {
    const ExperimentConfig c = small_config();
    const NoiseModel m = make_noise_model(c);
    std::vector<TrajectoryRecord> ens = run_ensemble(c, 0.02);
    const EnergyResidual r = energy_equality_residual(ens, m);
    // drift reference is t nu N exactly
    for (std::size_t j = 0; j < r.times.size(); ++j)
        CHECK(r.drift[j] == doctest::Approx(r.times[j] * 0.02 * 2).epsilon(1e-14));

    std::vector<TrajectoryRecord> rev(ens.rbegin(), ens.rend());
    const EnergyResidual p = energy_equality_residual(rev, m);
    CHECK(p.residual == r.residual);
    CHECK(p.se == r.se);

    const ItoConsistency ic = ito_consistency(ens, paths_of(c, m, ens), m, checkpoint_steps(r.times.size() - 1, 4));
    CHECK(ic.worst_ratio <= 3.0);

    std::vector<TrajectoryRecord> mixed = ens;
    mixed[1].nu = 0.01;
    CHECK_THROWS_AS(energy_equality_residual(mixed, m), ConfigError);
}

TEST_CASE("uniform energy bound scales with the square root of nu") {
    const ExperimentConfig c = small_config();
    const NoiseModel m = make_noise_model(c);
    const std::vector<TrajectoryRecord> ens = run_ensemble(c, 0.02);
    std::vector<TrajectoryRecord> half = ens;
    for (TrajectoryRecord& r : half) r.nu *= 0.5;
    const UniformEnergyCheck a = uniform_energy_check(ens, m), b = uniform_energy_check(half, m);
    double e0 = 0.0;
    for (const TrajectoryRecord& r : ens) e0 += r.energy.front();
    e0 /= static_cast<double>(ens.size());
    CHECK((b.base - e0) == doctest::Approx((a.base - e0) / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(b.noise == doctest::Approx(a.noise / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(a.lhs <= a.rhs_bound);
    CHECK(a.k_min <= a.k);
}

TEST_CASE("weak formulation rejects test fields with a wall trace") {
    ExperimentConfig c = small_config();
    c.dense_snapshots = true;
    const NoiseModel m = make_noise_model(c);
    const TrajectoryRecord r = run_path(c, 0.02, 0, m);
    MovingTestField phi;
    phi.profile = VelocityField::sample(c.grid(), BoundaryCondition::free, [](double, double) { return 1.0; },
                                        [](double, double) { return 1.0; });
    CHECK_THROWS_AS(weak_formulation_residual(r, phi, m), InvalidInputError);
    ExperimentConfig sparse = small_config();
    phi.profile = test_dictionary(c.grid()).front();
    CHECK_THROWS_AS(weak_formulation_residual(run_path(sparse, 0.02, 0, m), phi, m), ConfigError);
}

TEST_CASE("test dictionary") {
    const Grid g = Grid::make(32, 32);
    const std::vector<VelocityField> d = test_dictionary(g);
    CHECK(d.size() == 8);
    for (const VelocityField& f : d) {
        CHECK(l2_norm(f) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.wall_normal_max() == 0.0);
    }
}

TEST_CASE("condition report invariants") {
    ExperimentConfig c = small_config();
    const EulerTrajectory euler = run_euler(c);
    const std::vector<TrajectoryRecord> ens = run_ensemble(c, 0.02);
    const ConditionReport r = condition_report(ens, euler, c.grid());
    CHECK(r.m2.mean >= r.m1.mean);
    CHECK(r.m1.mean >= 0.0);
    CHECK(r.d_total.mean >= r.d_layer.mean);
    CHECK(r.invariants_hold());
    CHECK(r.paths_used == 6);
    CHECK(r.checkpoints == 5);

    const KatoFunctionals k = kato_functionals(ens, c.grid());
    CHECK(k.layer.mean <= k.total.mean);
    CHECK(r.d_total.mean == k.total.mean);
}

TEST_CASE("layer covering the channel gives equal dissipations") {
    ExperimentConfig c = zero_config();
    c.ic.kind = IcKind::smooth;
    c.nu_list = {0.5};
    c.ensemble_size = 2;
    const std::vector<TrajectoryRecord> ens = run_ensemble(c, 0.5);
    const KatoFunctionals k = kato_functionals(ens, c.grid());
    CHECK(k.layer.mean == k.total.mean);
    CHECK(k.total.mean > 0.0);
}

TEST_CASE("single path: M1 equals M2") {
    ExperimentConfig c = small_config();
    c.ensemble_size = 1;
    const ConditionReport r = condition_report(run_ensemble(c, 0.02), run_euler(c), c.grid());
    CHECK(r.m1.mean == r.m2.mean);
}

TEST_CASE("convergence metrics of identical fields vanish") {
    ExperimentConfig c = zero_config();
    c.ensemble_size = 2;
    const ConvergenceMetrics mt = convergence_metrics(run_ensemble(c, 0.02), run_euler(c));
    CHECK(mt.m1.mean == 0.0);
    CHECK(mt.m2.mean == 0.0);
    CHECK(mt.weak_gap_max == 0.0);

    ExperimentConfig other = c;
    other.checkpoints = 2;
    CHECK_THROWS_AS(convergence_metrics(run_ensemble(c, 0.02), run_euler(other)), ConfigError);
}

TEST_CASE("M1 is monotone under checkpoint refinement") {
    ExperimentConfig c = small_config();
    double prev = -1.0;
    for (int k : {2, 4, 8}) {
        c.checkpoints = k;
        const ConditionReport r = condition_report(run_ensemble(c, 0.02), run_euler(c), c.grid());
        CHECK(r.m1.mean >= prev);
        prev = r.m1.mean;
    }
}

TEST_CASE("gronwall checks") {
    ExperimentConfig c;
    c.nx = c.ny = 32;
    c.horizon = 0.2;
    c.dt = 5e-3;
    c.mode = RunMode::deterministic;
    c.checkpoints = 8;
    const EulerTrajectory u = run_euler(c);

    const GronwallCheck same = gronwall_bound_check(u, u, max_gradient(u));
    for (std::size_t k = 0; k < same.lhs.size(); ++k) {
        CHECK(same.lhs[k] == 0.0);
        CHECK(same.rhs[k] == 0.0);
    }
    CHECK(same.satisfied);

    ExperimentConfig z = c;
    z.ic.kind = IcKind::zero;
    const EulerTrajectory zero = run_euler(z);
    const GronwallCheck vs_zero = gronwall_bound_check(u, zero, 0.0);
    CHECK(vs_zero.rhs.front() == doctest::Approx(u.energy.front()).epsilon(1e-12));
    for (std::size_t k = 0; k < vs_zero.lhs.size(); ++k)
        CHECK(vs_zero.lhs[k] == doctest::Approx(vs_zero.rhs[k]).epsilon(1e-4));

    const PreparedForcing none = PreparedForcing::make(ForcingSpec{}, c.grid());
    const GronwallCheck forced = forced_gronwall_bound_check(u, zero, none, none, 0.0);
    CHECK(forced.force_term == 0.0);
    CHECK(forced.rhs == vs_zero.rhs);

    const EnergyEstimate est = energy_estimate_check(u, none);
    CHECK(est.bound == doctest::Approx(2.0 * u.energy.front()).epsilon(1e-14));
    CHECK(est.satisfied);
    const EnergyEstimate zest = energy_estimate_check(zero, none);
    CHECK(zest.sup_energy == 0.0);
    CHECK(zest.bound == 0.0);
    CHECK(zest.satisfied);
}

TEST_CASE("steady force from rest stays inside the energy estimate") {
    ExperimentConfig c;
    c.nx = c.ny = 32;
    c.horizon = 0.5;
    c.dt = 5e-3;
    c.mode = RunMode::deterministic;
    c.checkpoints = 8;
    c.ic.kind = IcKind::zero;
    c.forcing.stream = StreamFunction{1.0, {{0.05, 1, true, 1}}};
    const EulerTrajectory u = run_euler(c);
    const PreparedForcing f = PreparedForcing::make(c.forcing, c.grid());
    const EnergyEstimate est = energy_estimate_check(u, f);
    CHECK(est.sup_energy > 0.0);
    CHECK(est.satisfied);
    CHECK(force_norm(f, u.times) > 0.0);
    CHECK(force_difference_norm(f, f, u.times) == 0.0);
}
