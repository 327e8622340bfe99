#include <cmath>
#include <vector>

#include "doctest.h"
#include "kato/corrector/corrector.hpp"
#include "kato/errors.hpp"
#include "kato/fields/operators.hpp"
#include "support.hpp"

using namespace kato;

namespace {

EulerState channel_state(const Grid& g, double scale = 1.0) {
    const StreamFunction s{g.length_x, {{0.1 * scale, 1, true, 1}, {0.05 * scale, 2, false, 2}, {0.04 * scale, 0, false, 1}}};
    return make_euler_state(s, g);
}

}  // namespace

TEST_CASE("cutoff profile") {
    CHECK(cutoff(0.0) == 1.0);
    CHECK(cutoff(1.0) == 0.0);
    CHECK(cutoff(2.0) == 0.0);
    CHECK(cutoff(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    double d1 = 0.0, d2 = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double r = k / 1000.0;
        CHECK(std::abs(cutoff(r)) <= 1.0 + 1e-15);
        d1 = std::max(d1, std::abs(cutoff_d1(r)));
        d2 = std::max(d2, std::abs(cutoff_d2(r)));
        const double h = 1e-6;
        if (r > h && r < 1 - h) CHECK(cutoff_d1(r) == doctest::Approx((cutoff(r + h) - cutoff(r - h)) / (2 * h)).epsilon(1e-6));
    }
    CHECK(d1 <= 30.0);
    CHECK(d2 <= 60.0);
    CHECK(cutoff_d1(0.0) == 0.0);
    CHECK(cutoff_d2(1.0) == 0.0);
}

TEST_CASE("skew matrix component") {
    const Grid g = Grid::make(32, 64);
    const ScalarField a = skew_from_euler(channel_state(g));
    for (int i = 0; i < g.nx; ++i) {
        CHECK(a(i, 0) == 0.0);
        CHECK(a(i, g.ny) == 0.0);
    }
    CHECK(skew_from_euler(make_euler_state(StreamFunction{}, g)).max_abs() == 0.0);

    // div a = rot(a12) reproduces ubar at second order
    std::vector<double> err;
    for (int n : {32, 64, 128}) {
        const Grid h = Grid::make(n, n);
        const EulerState s = channel_state(h);
        err.push_back((rot(skew_from_euler(s), BoundaryCondition::no_penetration) - s.velocity).max_abs());
    }
    CHECK(err[2] <= err[1]);
}

TEST_CASE("corrector bundle") {
    const Grid g = Grid::make(32, 128);
    const EulerState s = channel_state(g);
    const CorrectorBundle b = build_corrector(s, 0.125);
    CHECK(trace_mismatch(b) <= 1e-10);
    CHECK(divergence(b.v).max_abs() <= 1e-9);

    // zero outside the layer, for samples whose stencil stays outside it
    for (int j = 0; j < g.ny; ++j) {
        const double y = (j + 0.5) * g.dy;
        if (std::min(y, 1 - y) >= 0.125 + g.dy / 2)
            for (int i = 0; i < g.nx; ++i) CHECK(b.v.u(i, j) == 0.0);
    }
    for (int j = 0; j <= g.ny; ++j) {
        const double y = j * g.dy;
        if (std::min(y, 1 - y) >= 0.125)
            for (int i = 0; i < g.nx; ++i) CHECK(b.v.v(i, j) == 0.0);
    }

    CHECK(build_corrector(make_euler_state(StreamFunction{}, g), 0.25).v.max_abs() == 0.0);
    CHECK(trace_mismatch(build_corrector(s, 0.5)) <= 1e-10);
    CHECK_THROWS_AS(build_corrector(s, 0.5 * g.dy), ResolutionError);
}

TEST_CASE("log-log fit") {
    const std::vector<double> x{0.125, 0.0625, 0.03125, 0.015625};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 0.5));
    const SlopeFit f = fit_loglog(x, y);
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.ci_low <= f.slope);
    CHECK(f.ci_high >= f.slope);
}

TEST_CASE("scaling report guards") {
    const Grid g = Grid::make(16, 64);
    const EulerState s = channel_state(g);
    CHECK_THROWS_AS(corrector_scaling_report(s, {0.25, 0.125, 0.0625}, 1e-4), ConfigError);
    CHECK_THROWS_AS(corrector_scaling_report(s, {0.25, 0.125, 0.0625, 0.03125}, 1e-4), ResolutionError);
    CHECK_THROWS_AS(corrector_scaling_report(s, {0.75, 0.25, 0.125, 0.0625}, 1e-4), ConfigError);
}
