#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kato/ensemble/ensemble.hpp"
#include "kato/errors.hpp"
#include "kato/fields/norms.hpp"
#include "kato/io/serialize.hpp"
#include "support.hpp"

using namespace kato;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.nx = c.ny = 16;
    c.horizon = 0.1;
    c.dt = 5e-3;
    c.nu_list = {0.02, 0.01};
    c.n_modes = 2;
    c.ensemble_size = 4;
    c.checkpoints = 4;
    c.seed = 5;
    return c;
}

std::string report_text(const SweepReport& r) {
    Json j = to_json(r);
    j.erase("config");
    return j.dump();
}

}  // namespace

TEST_CASE("configuration validation") {
    ExperimentConfig c = small_config();
    CHECK_NOTHROW(c.validate());
    for (auto breaker : std::vector<void (*)(ExperimentConfig&)>{
             [](ExperimentConfig& x) { x.nu_list = {0.01, -0.01}; },
             [](ExperimentConfig& x) { x.nu_list = {0.01, 0.01}; },
             [](ExperimentConfig& x) { x.nu_list.clear(); },
             [](ExperimentConfig& x) { x.ensemble_size = 0; },
             [](ExperimentConfig& x) { x.layer_c = 0.0; },
             [](ExperimentConfig& x) { x.dt = 0.0; },
             [](ExperimentConfig& x) { x.checkpoints = 0; },
             [](ExperimentConfig& x) { x.dt = 0.05, x.ic.amplitude = 50.0; },
         }) {
        ExperimentConfig bad = small_config();
        breaker(bad);
        CHECK_THROWS_AS(bad.validate(), ConfigError);
    }
    CHECK(parse_run_mode("deterministic") == RunMode::deterministic);
    CHECK_THROWS_AS(parse_run_mode("chaotic"), ConfigError);
}

TEST_CASE("seed keys") {
    ExperimentConfig c = small_config();
    c.nu_list = {0.01, 0.04, 0.02};
    CHECK(sorted_nus(c) == std::vector<double>{0.04, 0.02, 0.01});
    CHECK(nu_index(c, 0.02) == 1);
    const PathKeys a = path_keys(c, 0.04, 3), b = path_keys(c, 0.01, 3), d = path_keys(c, 0.04, 2);
    CHECK(a.brownian == b.brownian);
    CHECK(a.perturbation != b.perturbation);
    CHECK(a.brownian != d.brownian);
}

TEST_CASE("paths are deterministic and share Brownian motions across nu") {
    const ExperimentConfig c = small_config();
    const TrajectoryRecord r1 = run_path(c, 0.02, 1), r2 = run_path(c, 0.02, 1);
    CHECK(r1.energy == r2.energy);
    CHECK(r1.cross == r2.cross);
    CHECK(r1.brownian == r2.brownian);

    const TrajectoryRecord other_nu = run_path(c, 0.01, 1);
    CHECK(other_nu.brownian == r1.brownian);
    CHECK(other_nu.energy != r1.energy);

    for (int p = 0; p < 8; ++p)
        for (int q = 0; q < p; ++q) CHECK(run_path(c, 0.02, p).brownian != run_path(c, 0.02, q).brownian);
    CHECK(r1.energy.size() == static_cast<std::size_t>(r1.n_steps() + 1));
}

TEST_CASE("deterministic mode reproduces the plain solver") {
    ExperimentConfig c = small_config();
    c.mode = RunMode::deterministic;
    c.ensemble_size = 1;
    const TrajectoryRecord r = run_path(c, 0.02, 0);
    const NoiseModel m = make_noise_model(c);
    NSState s{0.0, ns_initial_condition(c, 0.02, 0), 0.02};
    const TimeGrid tg = TimeGrid::make(c.horizon, c.dt);
    StepOptions opts;
    opts.cfl_limit = c.cfl_limit;
    opts.solver = c.solver;
    for (int j = 0; j < tg.n_steps; ++j) {
        s = ns_step(s, tg.step_length(j), m, {}, opts);
        CHECK(r.energy[j + 1] == doctest::Approx(l2_norm(s.velocity) * l2_norm(s.velocity)).epsilon(1e-14));
    }
}

TEST_CASE("sweep is a pure function of the configuration") {
    const ExperimentConfig c = small_config();
    const SweepReport a = run_sweep(c), b = run_sweep(c);
    CHECK(report_text(a) == report_text(b));
    CHECK(a.reports.size() == 2);
    for (const ConditionReport& r : a.reports) CHECK(r.invariants_hold());

    ExperimentConfig swapped = c;
    std::reverse(swapped.nu_list.begin(), swapped.nu_list.end());
    CHECK(report_text(run_sweep(swapped)) == report_text(a));
}

TEST_CASE("single deterministic path: M1 is the NS to Euler gap") {
    ExperimentConfig c = small_config();
    c.nu_list = {0.01};
    c.ensemble_size = 1;
    c.n_modes = 0;
    const SweepReport s = run_sweep(c);
    const TrajectoryRecord r = run_path(c, 0.01, 0);
    const EulerTrajectory e = run_euler(c);
    double gap = 0.0;
    for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        const double d = l2_norm(r.snapshots[k] - e.snapshots[k]);
        gap = std::max(gap, d * d);
    }
    CHECK(s.reports[0].m1.mean == doctest::Approx(gap).epsilon(1e-12));
    CHECK(s.reports[0].m2.mean == s.reports[0].m1.mean);
}

TEST_CASE("standard errors shrink like one over root M") {
    ExperimentConfig c = small_config();
    c.nu_list = {0.02};
    c.ensemble_size = 64;
    const SweepReport a = run_sweep(c);
    c.ensemble_size = 128;
    const SweepReport b = run_sweep(c);
    for (auto pick : {+[](const ConditionReport& r) { return r.m2.se; }, +[](const ConditionReport& r) { return r.d_total.se; }}) {
        const double ratio = pick(b.reports[0]) / pick(a.reports[0]);
        CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
    }
}

TEST_CASE("failed paths are counted, not averaged") {
    ExperimentConfig c = small_config();
    c.nu_list = {0.02};
    c.max_halvings = 0;
    c.perturbation_scale = 400.0;
    c.perturbation_power = 0.0;
    const TrajectoryRecord r = run_path(c, 0.02, 0);
    CHECK(r.failed);
    CHECK_THROWS_AS(run_sweep(c), NumericalError);

    c.max_halvings = 3;
    c.perturbation_scale = 10.0;
    const TrajectoryRecord split = run_path(c, 0.02, 0);
    CHECK_FALSE(split.failed);
    CHECK(split.substeps > 1);
    CHECK(split.times.back() == doctest::Approx(c.horizon).epsilon(1e-14));
}

TEST_CASE("deterministic forced configuration") {
    const ExperimentConfig c = theorem7_config(small_config());
    CHECK(c.mode == RunMode::deterministic);
    CHECK(c.effective_modes() == 0);
    CHECK(c.ensemble_size == 1);
}

TEST_CASE("rough data schedule") {
    ExperimentConfig c = small_config();
    c.nx = c.ny = 32;
    c.nu_list = {0.02, 0.01, 0.005, 0.0025};
    c.ic.kind = IcKind::rough;
    c.ic.s = 1.5;
    const Theorem6Schedule s = theorem6_schedule(c, 4.0, 0.05);
    REQUIRE(s.stages.size() == 4);
    for (std::size_t k = 1; k < s.stages.size(); ++k) {
        CHECK(s.stages[k].m == 2 * s.stages[k - 1].m);
        CHECK(s.stages[k].data_distance <= s.stages[k - 1].data_distance);
    }
    CHECK(s.converged == (s.stages.back().data_distance < 0.05));
    CHECK_THROWS_AS(theorem6_schedule(small_config()), ConfigError);
}
