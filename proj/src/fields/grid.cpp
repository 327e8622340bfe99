#include "kato/fields/grid.hpp"

#include <algorithm>
#include <cmath>

#include "kato/errors.hpp"

namespace kato {

Grid Grid::make(int nx, int ny, double length_x) {
    if (nx < 8 || ny < 8)
        throw ConfigError("grid: nx and ny must be >= 8 (got " + std::to_string(nx) + "x" +
                          std::to_string(ny) + ")");
    if (!(length_x > 0.0) || !std::isfinite(length_x))
        throw ConfigError("grid: length_x must be positive");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.length_x = length_x;
    g.dx = length_x / nx;
    g.dy = height / ny;
    return g;
}

std::string to_string(Stagger s) {
    switch (s) {
        case Stagger::cell: return "cell";
        case Stagger::node: return "node";
        case Stagger::u_face: return "u_face";
        case Stagger::v_face: return "v_face";
    }
    return "?";
}

std::string to_string(BoundaryCondition bc) {
    switch (bc) {
        case BoundaryCondition::no_slip: return "no_slip";
        case BoundaryCondition::no_penetration: return "no_penetration";
        case BoundaryCondition::free: return "free";
    }
    return "?";
}

int rows_for(const Grid& g, Stagger s) {
    return (s == Stagger::node || s == Stagger::v_face) ? g.ny + 1 : g.ny;
}

double x_of(const Grid& g, Stagger s, int i) {
    return (s == Stagger::cell || s == Stagger::v_face) ? (i + 0.5) * g.dx : i * g.dx;
}

double y_of(const Grid& g, Stagger s, int j) {
    if (s == Stagger::node || s == Stagger::v_face) {
        if (j == g.ny) return Grid::height;
        return j * g.dy;
    }
    return (j + 0.5) * g.dy;
}

double row_weight(const Grid& g, Stagger s, int j) {
    if ((s == Stagger::node || s == Stagger::v_face) && (j == 0 || j == g.ny)) return 0.5;
    return 1.0;
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const Grid& grid, Stagger stagger, double fill)
    : grid_(grid),
      stagger_(stagger),
      rows_(rows_for(grid, stagger)),
      data_(static_cast<std::size_t>(rows_for(grid, stagger)) * grid.nx, fill) {}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_conforming(*this, other, "ScalarField +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_conforming(*this, other, "ScalarField -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double c) {
    for (auto& x : data_) x *= c;
    return *this;
}

ScalarField& ScalarField::axpy(double c, const ScalarField& other) {
    require_conforming(*this, other, "ScalarField axpy");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += c * other.data_[k];
    return *this;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

// ---------------------------------------------------------------------------

VelocityField::VelocityField(const Grid& grid, BoundaryCondition bc_)
    : u(grid, Stagger::u_face), v(grid, Stagger::v_face), bc(bc_) {}

VelocityField::VelocityField(ScalarField u_, ScalarField v_, BoundaryCondition bc_)
    : u(std::move(u_)), v(std::move(v_)), bc(bc_) {
    if (u.stagger() != Stagger::u_face || v.stagger() != Stagger::v_face || !(u.grid() == v.grid()))
        throw ConfigError("VelocityField: components must be u_face/v_face samples on one grid");
}

VelocityField& VelocityField::operator+=(const VelocityField& other) {
    u += other.u;
    v += other.v;
    return *this;
}

VelocityField& VelocityField::operator-=(const VelocityField& other) {
    u -= other.u;
    v -= other.v;
    return *this;
}

VelocityField& VelocityField::operator*=(double c) {
    u *= c;
    v *= c;
    return *this;
}

VelocityField& VelocityField::axpy(double c, const VelocityField& other) {
    u.axpy(c, other.u);
    v.axpy(c, other.v);
    return *this;
}

double VelocityField::wall_normal_max() const {
    double m = 0.0;
    const int ny = grid().ny;
    for (int i = 0; i < grid().nx; ++i) m = std::max({m, std::abs(v(i, 0)), std::abs(v(i, ny))});
    return m;
}

double VelocityField::wall_tangential_max() const {
    double m = 0.0;
    const int ny = grid().ny;
    for (int i = 0; i < grid().nx; ++i) {
        m = std::max(m, std::abs(1.5 * u(i, 0) - 0.5 * u(i, 1)));
        m = std::max(m, std::abs(1.5 * u(i, ny - 1) - 0.5 * u(i, ny - 2)));
    }
    return m;
}

double VelocityField::max_abs() const { return std::max(u.max_abs(), v.max_abs()); }

VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
VelocityField operator*(double c, VelocityField a) { return a *= c; }

void require_conforming(const ScalarField& a, const ScalarField& b, const char* where) {
    if (!a.conforms(b))
        throw ConfigError(std::string(where) + ": shape mismatch (" + to_string(a.stagger()) + " " +
                          std::to_string(a.nx()) + "x" + std::to_string(a.rows()) + " vs " +
                          to_string(b.stagger()) + " " + std::to_string(b.nx()) + "x" +
                          std::to_string(b.rows()) + ")");
}

void require_conforming(const VelocityField& a, const VelocityField& b, const char* where) {
    if (!a.conforms(b))
        throw ConfigError(std::string(where) + ": velocity fields live on different grids");
}

// ---------------------------------------------------------------------------

const ScalarField& DistanceField::at(Stagger s) const {
    switch (s) {
        case Stagger::cell: return cell;
        case Stagger::node: return node;
        case Stagger::u_face: return u_face;
        case Stagger::v_face: return v_face;
    }
    return cell;
}

DistanceField distance_field(const Grid& grid) {
    auto rho = [](double, double y) { return std::min(y, Grid::height - y); };
    return DistanceField{ScalarField::sample(grid, Stagger::cell, rho),
                         ScalarField::sample(grid, Stagger::node, rho),
                         ScalarField::sample(grid, Stagger::u_face, rho),
                         ScalarField::sample(grid, Stagger::v_face, rho)};
}

LayerRegion LayerRegion::make(const Grid& grid, double delta) {
    if (!(delta > 0.0)) throw ConfigError("LayerRegion: delta must be positive");
    LayerRegion r;
    r.delta = delta;
    r.mask = ScalarField::sample(grid, Stagger::cell, [delta](double, double y) {
        return std::min(y, Grid::height - y) <= delta ? 1.0 : 0.0;
    });
    return r;
}

}  // namespace kato
