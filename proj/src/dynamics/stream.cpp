#include "kato/dynamics/stream.hpp"

#include <cmath>
#include <numbers>

#include "kato/errors.hpp"

namespace kato {

namespace {

constexpr double pi = std::numbers::pi;

// Reduces x modulo 2 so integer and half-integer arguments hit exact values.
double reduce2(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0.0) r += 2.0;
    return r;
}

}  // namespace

double sinpi(double x) {
    const double r = reduce2(x);
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r == 0.5) return 1.0;
    if (r == 1.5) return -1.0;
    return std::sin(pi * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

double StreamFunction::psi(double x, double y) const {
    double s = 0.0;
    for (const StreamTerm& t : terms) {
        const double a = 2.0 * t.m * x / length_x;
        s += t.amplitude * (t.sine ? sinpi(a) : cospi(a)) * sinpi(t.n * y);
    }
    return s;
}

double StreamFunction::omega(double x, double y) const {
    double s = 0.0;
    for (const StreamTerm& t : terms) {
        const double kx = 2.0 * pi * t.m / length_x, ky = pi * t.n;
        const double a = 2.0 * t.m * x / length_x;
        s += t.amplitude * (kx * kx + ky * ky) * (t.sine ? sinpi(a) : cospi(a)) * sinpi(t.n * y);
    }
    return s;
}

double StreamFunction::u(double x, double y) const {
    double s = 0.0;
    for (const StreamTerm& t : terms) {
        const double a = 2.0 * t.m * x / length_x;
        s += t.amplitude * (t.sine ? sinpi(a) : cospi(a)) * pi * t.n * cospi(t.n * y);
    }
    return s;
}

double StreamFunction::v(double x, double y) const {
    double s = 0.0;
    for (const StreamTerm& t : terms) {
        const double kx = 2.0 * pi * t.m / length_x;
        const double a = 2.0 * t.m * x / length_x;
        const double dx = t.sine ? kx * cospi(a) : -kx * sinpi(a);
        s -= t.amplitude * dx * sinpi(t.n * y);
    }
    return s;
}

ScalarField StreamFunction::sample_psi(const Grid& g) const {
    if (g.length_x != length_x) throw ConfigError("stream function: length_x does not match the grid");
    return ScalarField::sample(g, Stagger::node, [this](double x, double y) { return psi(x, y); });
}

ScalarField StreamFunction::sample_omega(const Grid& g) const {
    if (g.length_x != length_x) throw ConfigError("stream function: length_x does not match the grid");
    return ScalarField::sample(g, Stagger::node, [this](double x, double y) { return omega(x, y); });
}

VelocityField StreamFunction::sample_velocity(const Grid& g, BoundaryCondition bc) const {
    return VelocityField::sample(
        g, bc, [this](double x, double y) { return u(x, y); }, [this](double x, double y) { return v(x, y); });
}

StreamFunction StreamFunction::scaled(double c) const {
    StreamFunction out = *this;
    for (StreamTerm& t : out.terms) t.amplitude *= c;
    return out;
}

StreamFunction operator+(const StreamFunction& a, const StreamFunction& b) {
    if (a.length_x != b.length_x) throw ConfigError("stream function: length_x mismatch");
    StreamFunction out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

}  // namespace kato
