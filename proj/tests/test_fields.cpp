#include <cmath>
#include <vector>

#include "doctest.h"
#include "kato/errors.hpp"
#include "kato/fields/kernels.hpp"
#include "kato/fields/norms.hpp"
#include "kato/fields/operators.hpp"
#include "kato/fields/poisson.hpp"
#include "kato/fields/projection.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace kato;
using kato::test::pi;

namespace {

double max_diff(const VelocityField& a, const VelocityField& b) { return (a - b).max_abs(); }

ScalarField trig_stream(const Grid& g) {
    return ScalarField::sample(g, Stagger::node, [&](double x, double y) {
        return std::sin(2 * pi * x / g.length_x) * std::pow(std::sin(pi * y), 2);
    });
}

VelocityField analytic_rot(const Grid& g) {
    const double k = 2 * pi / g.length_x;
    return VelocityField::sample(
        g, BoundaryCondition::no_penetration,
        [&](double x, double y) { return std::sin(k * x) * pi * std::sin(2 * pi * y); },
        [&](double x, double y) { return -k * std::cos(k * x) * std::pow(std::sin(pi * y), 2); });
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid::make(4, 16), ConfigError);
    CHECK_THROWS_AS(Grid::make(16, 16, 0.0), ConfigError);
    const Grid g = Grid::make(16, 32, 2.0);
    CHECK(g.dx == doctest::Approx(0.125));
    CHECK(g.dy == doctest::Approx(1.0 / 32));
}

TEST_CASE("distance field") {
    const Grid g = Grid::make(8, 10);
    const DistanceField rho = distance_field(g);
    CHECK(rho.node(0, 3) == doctest::Approx(0.3));
    CHECK(rho.node(0, 5) == doctest::Approx(0.5));
    CHECK(rho.node(0, 0) == 0.0);
    CHECK(rho.node(0, 10) == 0.0);
}

TEST_CASE("divergence of uniform and rot fields") {
    const Grid g = Grid::make(16, 16);
    VelocityField c = VelocityField::sample(g, BoundaryCondition::free, [](double, double) { return 1.5; },
                                            [](double, double) { return -0.5; });
    CHECK(divergence(c).max_abs() == 0.0);
    CHECK(divergence(rot(trig_stream(g))).max_abs() < 1e-10);

    CHECK(divergence(analytic_rot(Grid::make(64, 64))).max_abs() <= 1e-3);

    // with nx == ny the x and y truncation factors cancel exactly, so refine an anisotropic grid
    std::vector<double> err;
    for (int n : {32, 64, 128}) err.push_back(divergence(analytic_rot(Grid::make(n, 2 * n))).max_abs());
    CHECK(test::log2_ratio(err[0], err[1]) > 1.8);
    CHECK(test::log2_ratio(err[1], err[2]) > 1.8);
}

TEST_CASE("serial and omp kernels agree bitwise") {
    const Grid g = Grid::make(24, 20, 1.5);
    const VelocityField a = test::random_velocity(g, 3, BoundaryCondition::no_slip);
    const VelocityField w = test::random_velocity(g, 7, BoundaryCondition::no_slip);
    VelocityField s(g, w.bc), o(g, w.bc);
    kernels::serial::advect(a, w, s);
    kernels::omp::advect(a, w, o);
    CHECK(max_diff(s, o) == 0.0);
    kernels::serial::laplacian(w, s);
    kernels::omp::laplacian(w, o);
    CHECK(max_diff(s, o) == 0.0);
    ScalarField ds(g, Stagger::cell), dom(g, Stagger::cell);
    kernels::serial::divergence(a, ds);
    kernels::omp::divergence(a, dom);
    CHECK((ds - dom).max_abs() == 0.0);
    const ScalarField p = test::random_scalar(g, Stagger::node, 11);
    const ScalarField q = test::random_scalar(g, Stagger::node, 12);
    ScalarField js(g, Stagger::node), jo(g, Stagger::node);
    kernels::serial::arakawa(p, q, js);
    kernels::omp::arakawa(p, q, jo);
    CHECK((js - jo).max_abs() == 0.0);
    CHECK(kernels::serial::dot_rows(p, q).total() == kernels::omp::dot_rows(p, q).total());
}

TEST_CASE("separable solver: direct and iterative agree") {
    const Grid g = Grid::make(16, 12, 2.0);
    for (WallClosure cl : {WallClosure::neumann_cell, WallClosure::dirichlet_cell, WallClosure::dirichlet_node}) {
        const Stagger st = cl == WallClosure::dirichlet_node ? Stagger::node : Stagger::cell;
        ScalarField b = test::random_scalar(g, st, 5);
        if (cl == WallClosure::dirichlet_node)
            for (int i = 0; i < g.nx; ++i) b(i, 0) = b(i, g.ny) = 0.0;
        for (double alpha : {0.0, 1.0}) {
            SeparableSolver direct(g, cl);
            SeparableSolver cg(g, cl, SolverOptions{SolverKind::iterative, 1e-12, 2000});
            const ScalarField x1 = direct.solve(alpha, 0.3, b);
            const ScalarField x2 = cg.solve(alpha, 0.3, b);
            CHECK((x1 - x2).max_abs() < 1e-8);
            if (alpha == 0.0 && cl == WallClosure::neumann_cell) continue;
            CHECK((direct.apply(alpha, 0.3, x1) - b).max_abs() < 1e-9);
        }
    }
}

TEST_CASE("iterative solver reports non-convergence") {
    const Grid g = Grid::make(32, 32);
    SeparableSolver cg(g, WallClosure::neumann_cell, SolverOptions{SolverKind::iterative, 1e-14, 3});
    const ScalarField b = test::random_scalar(g, Stagger::cell, 9);
    try {
        cg.solve(0.0, 1.0, b);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.iterations() == 3);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("leray projection matches the dense saddle-point oracle") {
    const Grid g = Grid::make(8, 8);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const VelocityField f = test::random_velocity(g, 100 + s);
        const VelocityField p = leray_project(f);
        CHECK(max_diff(p, test::dense_projection(f)) <= 1e-10);
        CHECK(divergence(p).max_abs() <= 1e-9);
        CHECK(p.wall_normal_max() == 0.0);
    }
}

TEST_CASE("leray projection properties") {
    const Grid g = Grid::make(24, 16, 1.5);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const VelocityField f = test::random_velocity(g, 500 + 2 * s);
        const VelocityField p = leray_project(f);
        CHECK(max_diff(leray_project(p), p) <= 1e-10);
        CHECK(l2_norm(p) <= l2_norm(f) + 1e-14);
    }
    const VelocityField h = rot(trig_stream(g));
    CHECK(max_diff(leray_project(h), h) <= 1e-10);

    const ScalarField phi = ScalarField::sample(
        g, Stagger::cell, [&](double x, double y) { return std::cos(2 * pi * x / g.length_x) * std::cos(pi * y); });
    CHECK(leray_project(gradient(phi)).max_abs() < 1e-10);
}

TEST_CASE("norms") {
    const Grid g = Grid::make(32, 32);
    const VelocityField z(g, BoundaryCondition::no_slip);
    CHECK(l2_norm(z) == 0.0);
    CHECK(h1_seminorm(z) == 0.0);
    CHECK(linf_norm(z) == 0.0);

    VelocityField one = VelocityField::sample(g, BoundaryCondition::free, [](double, double) { return 1.0; },
                                              [](double, double) { return 0.0; });
    CHECK(l2_norm(one) == doctest::Approx(1.0).epsilon(1e-14));

    const VelocityField s = VelocityField::sample(
        g, BoundaryCondition::free, [](double x, double y) { return std::sin(2 * pi * x) * std::sin(pi * y); },
        [](double, double) { return 0.0; });
    CHECK(l2_norm(s) == doctest::Approx(0.5).epsilon(1e-3));

    const VelocityField r = test::random_velocity(g, 77, BoundaryCondition::no_slip);
    VelocityField r3 = -3.0 * r;
    CHECK(l2_norm(r3) == doctest::Approx(3.0 * l2_norm(r)).epsilon(1e-12));
    CHECK(h1_seminorm(r3) == doctest::Approx(3.0 * h1_seminorm(r)).epsilon(1e-12));
    CHECK(linf_norm(r3) == doctest::Approx(3.0 * linf_norm(r)).epsilon(1e-12));
}

TEST_CASE("h1 seminorm matches the diffusion operator for no-slip fields") {
    const Grid g = Grid::make(16, 12, 1.3);
    VelocityField w = test::random_velocity(g, 41, BoundaryCondition::no_slip);
    for (int i = 0; i < g.nx; ++i) w.v(i, 0) = w.v(i, g.ny) = 0.0;
    const double h1 = h1_seminorm(w);
    CHECK(-inner(laplacian(w), w) == doctest::Approx(h1 * h1).epsilon(1e-12));
}

TEST_CASE("layer norms") {
    const Grid g = Grid::make(16, 32);
    const DistanceField rho = distance_field(g);
    const VelocityField f = test::random_velocity(g, 8, BoundaryCondition::no_slip);

    const LayerNorms zero = layer_norms(VelocityField(g, BoundaryCondition::no_slip), LayerRegion::make(g, 0.25), rho);
    CHECK(zero.l2_layer == 0.0);
    CHECK(zero.grad_l2_layer == 0.0);
    CHECK(zero.hardy_quotient == 0.0);
    CHECK(zero.rho_grad_linf == 0.0);
    CHECK(zero.rho2_grad_linf == 0.0);
    CHECK(zero.rho_grad_l2 == 0.0);

    CHECK(layer_norms(f, LayerRegion::make(g, 0.5), rho).l2_layer == l2_norm(f));
    const DissipationPair d = dissipation(f, 0.5);
    CHECK(d.full == d.layer);
    CHECK(dissipation(f, 0.1).layer <= d.full);

    const VelocityField mid = VelocityField::sample(
        g, BoundaryCondition::no_slip,
        [](double, double y) { return std::abs(y - 0.5) < 0.2 ? 1.0 : 0.0; }, [](double, double) { return 0.0; });
    CHECK(layer_norms(mid, LayerRegion::make(g, 0.2), rho).l2_layer == 0.0);

    double prev = 0.0;
    for (double delta : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        const double l = layer_norms(f, LayerRegion::make(g, delta), rho).l2_layer;
        CHECK(l >= prev);
        prev = l;
    }
    CHECK(layer_norms(f, LayerRegion::make(g, 0.5 * g.dy), rho).under_resolved);
    CHECK_FALSE(layer_norms(f, LayerRegion::make(g, 4 * g.dy), rho).under_resolved);
}

TEST_CASE("trilinear form") {
    const Grid g = Grid::make(16, 16);
    const VelocityField a = test::random_velocity(g, 1);
    const VelocityField c = test::random_velocity(g, 2);
    CHECK(trilinear_form(a, VelocityField(g, BoundaryCondition::free), c) == 0.0);
}

TEST_CASE("trilinear form matches the brute-force sum") {
    const Grid g = Grid::make(8, 8);
    for (BoundaryCondition bc : {BoundaryCondition::no_slip, BoundaryCondition::no_penetration}) {
        const VelocityField a = test::random_velocity(g, 21, bc);
        const VelocityField b = test::random_velocity(g, 23, bc);
        const VelocityField c = test::random_velocity(g, 25, bc);
        CHECK(std::abs(trilinear_form(a, b, c) - test::brute_trilinear(a, b, c)) <= 1e-12);
    }
}

TEST_CASE("trilinear antisymmetry") {
    std::vector<double> eps;
    for (int n : {32, 64, 128}) {
        const Grid g = Grid::make(n, n);
        const VelocityField a = test::skew_carrier(g);
        const VelocityField w = test::skew_transported(g);
        eps.push_back(std::abs(trilinear_form(a, w, w)) / (l2_norm(a) * h1_seminorm(w) * l2_norm(w)));
    }
    CHECK(test::log2_ratio(eps[0], eps[1]) >= 1.0);
    CHECK(test::log2_ratio(eps[1], eps[2]) >= 1.0);

    // exactly skew once a is discretely divergence-free
    const Grid g = Grid::make(16, 12, 1.5);
    const VelocityField a = leray_project(test::random_velocity(g, 31, BoundaryCondition::no_penetration));
    VelocityField w = test::random_velocity(g, 33, BoundaryCondition::no_slip);
    for (int i = 0; i < g.nx; ++i) w.v(i, 0) = w.v(i, g.ny) = 0.0;
    CHECK(std::abs(trilinear_form(a, w, w)) <= 1e-12 * l2_norm(a) * h1_seminorm(w) * l2_norm(w));
}
