#include "kato/dynamics/initial.hpp"

#include <cmath>
#include <numbers>

#include "kato/dynamics/random.hpp"
#include "kato/errors.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double rough_scale = 0.1;

StreamFunction smooth_stream(double lx) {
    return StreamFunction{lx,
                          {{0.033, 0, false, 6}, {0.022, 3, false, 4}, {0.022, 6, true, 3}, {0.011, 9, false, 2}}};
}

StreamFunction rough_stream(const IcSpec& spec, const Grid& grid, double mollify) {
    if (!(spec.s > 1.0)) throw ConfigError("initial condition: rough decay exponent s must be > 1");
    const Philox4x32 gen(derive_seed(spec.seed, 0x726f756768ull));
    StreamFunction f{grid.length_x, {}};
    const int mx = grid.nx / 2 - 1;
    const int my = grid.ny / 2 - 1;
    auto damp = [&](double k2) { return mollify > 0.0 ? std::exp(-k2 / (2.0 * mollify * mollify)) : 1.0; };
    for (int m = 1; m <= mx; ++m) {
        const double decay = std::pow(m, -(spec.s + 1.0));
        const double kx = 2.0 * pi * m / grid.length_x;
        const double d = damp(kx * kx + pi * pi);
        const double a = normal_at(gen, {static_cast<std::uint32_t>(m), 0u, 0u, 0u});
        const double b = normal_at(gen, {static_cast<std::uint32_t>(m), 1u, 0u, 0u});
        f.terms.push_back({rough_scale * spec.amplitude * decay * d * a, m, false, 1});
        f.terms.push_back({rough_scale * spec.amplitude * decay * d * b, m, true, 1});
    }
    for (int n = 1; n <= my; ++n) {
        const double decay = std::pow(n, -(spec.s + 1.0));
        const double c = normal_at(gen, {static_cast<std::uint32_t>(n), 2u, 0u, 0u});
        f.terms.push_back({rough_scale * spec.amplitude * decay * damp(pi * pi * n * n) * c, 0, false, n});
    }
    return f;
}

}  // namespace

IcKind parse_ic_kind(const std::string& s) {
    if (s == "zero") return IcKind::zero;
    if (s == "smooth") return IcKind::smooth;
    if (s == "rough") return IcKind::rough;
    if (s == "mollified") return IcKind::mollified;
    throw ConfigError("unknown initial condition kind '" + s + "' (expected zero, smooth, rough or mollified)");
}

std::string to_string(IcKind k) {
    switch (k) {
        case IcKind::zero: return "zero";
        case IcKind::smooth: return "smooth";
        case IcKind::rough: return "rough";
        case IcKind::mollified: return "mollified";
    }
    return "?";
}

StreamFunction make_initial_stream(const IcSpec& spec, const Grid& grid) {
    switch (spec.kind) {
        case IcKind::zero: return StreamFunction{grid.length_x, {}};
        case IcKind::smooth: return smooth_stream(grid.length_x).scaled(spec.amplitude);
        case IcKind::rough: return rough_stream(spec, grid, 0.0);
        case IcKind::mollified:
            if (!(spec.m > 0.0)) throw ConfigError("initial condition: mollification parameter m must be > 0");
            return rough_stream(spec, grid, spec.m);
    }
    return {};
}

VelocityField make_initial_condition(const IcSpec& spec, const Grid& grid) {
    return rot(make_initial_stream(spec, grid).sample_psi(grid), BoundaryCondition::no_penetration);
}

}  // namespace kato
