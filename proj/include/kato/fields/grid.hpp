#pragma once

// Periodic channel [0, Lx] x [0, 1] with solid walls at y = 0 and y = 1,
// discretized on a MAC (staggered) layout:
//
//   cell   : ((i+1/2)dx, (j+1/2)dy)   nx x ny        pressure, div
//   node   : (i dx, j dy)             nx x (ny+1)    stream function, vorticity
//   u_face : (i dx, (j+1/2)dy)        nx x ny        x-velocity
//   v_face : ((i+1/2)dx, j dy)        nx x (ny+1)    y-velocity, rows 0 and ny on the walls
//
// Storage is row-major, index = j * nx + i, periodic in i.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kato {

struct Grid {
    int nx = 0;
    int ny = 0;
    double length_x = 1.0;
    double dx = 0.0;
    double dy = 0.0;

    static constexpr double height = 1.0;

    /// Validates nx, ny >= 8 and length_x > 0.
    static Grid make(int nx, int ny, double length_x = 1.0);

    double area() const { return length_x * height; }
    double cell_area() const { return dx * dy; }
    double min_spacing() const { return dx < dy ? dx : dy; }
    int wrap(int i) const { return ((i % nx) + nx) % nx; }

    bool operator==(const Grid& other) const {
        return nx == other.nx && ny == other.ny && length_x == other.length_x;
    }
};

enum class Stagger { cell, node, u_face, v_face };

std::string to_string(Stagger s);

int rows_for(const Grid& g, Stagger s);
double x_of(const Grid& g, Stagger s, int i);
double y_of(const Grid& g, Stagger s, int j);

/// Quadrature weight (fraction of dx*dy) for row j; wall rows of node and v_face
/// samples carry half weight (trapezoid rule in y).
double row_weight(const Grid& g, Stagger s, int j);

class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const Grid& grid, Stagger stagger, double fill = 0.0);

    template <class F>
    static ScalarField sample(const Grid& grid, Stagger stagger, F&& fn) {
        ScalarField out(grid, stagger);
        for (int j = 0; j < out.rows(); ++j)
            for (int i = 0; i < grid.nx; ++i)
                out(i, j) = fn(x_of(grid, stagger, i), y_of(grid, stagger, j));
        return out;
    }

    const Grid& grid() const { return grid_; }
    Stagger stagger() const { return stagger_; }
    int nx() const { return grid_.nx; }
    int rows() const { return rows_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    /// Periodic access in i.
    double at(int i, int j) const { return (*this)(grid_.wrap(i), j); }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }
    double* row(int j) { return data_.data() + static_cast<std::size_t>(j) * grid_.nx; }
    const double* row(int j) const { return data_.data() + static_cast<std::size_t>(j) * grid_.nx; }

    bool conforms(const ScalarField& other) const {
        return grid_ == other.grid_ && stagger_ == other.stagger_;
    }

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double c);
    /// this += c * other
    ScalarField& axpy(double c, const ScalarField& other);

    double max_abs() const;

private:
    Grid grid_{};
    Stagger stagger_ = Stagger::cell;
    int rows_ = 0;
    std::vector<double> data_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

enum class BoundaryCondition { no_slip, no_penetration, free };

std::string to_string(BoundaryCondition bc);

/// Staggered 2D velocity: u on vertical faces, v on horizontal faces.
struct VelocityField {
    ScalarField u;
    ScalarField v;
    BoundaryCondition bc = BoundaryCondition::free;

    VelocityField() = default;
    VelocityField(const Grid& grid, BoundaryCondition bc);
    VelocityField(ScalarField u, ScalarField v, BoundaryCondition bc);

    template <class FU, class FV>
    static VelocityField sample(const Grid& grid, BoundaryCondition bc, FU&& fu, FV&& fv) {
        return VelocityField(ScalarField::sample(grid, Stagger::u_face, fu),
                             ScalarField::sample(grid, Stagger::v_face, fv), bc);
    }

    const Grid& grid() const { return u.grid(); }
    bool conforms(const VelocityField& other) const {
        return u.conforms(other.u) && v.conforms(other.v);
    }

    VelocityField& operator+=(const VelocityField& other);
    VelocityField& operator-=(const VelocityField& other);
    VelocityField& operator*=(double c);
    VelocityField& axpy(double c, const VelocityField& other);

    /// Largest |v| on the two wall rows.
    double wall_normal_max() const;
    /// Tangential wall value extrapolated from the first two u rows, max over both walls.
    double wall_tangential_max() const;
    double max_abs() const;
};

VelocityField operator+(VelocityField a, const VelocityField& b);
VelocityField operator-(VelocityField a, const VelocityField& b);
VelocityField operator*(double c, VelocityField a);

void require_conforming(const VelocityField& a, const VelocityField& b, const char* where);
void require_conforming(const ScalarField& a, const ScalarField& b, const char* where);

/// Distance to the nearest wall, rho = min(y, 1 - y), at every stagger location.
struct DistanceField {
    ScalarField cell;
    ScalarField node;
    ScalarField u_face;
    ScalarField v_face;

    const ScalarField& at(Stagger s) const;
};

DistanceField distance_field(const Grid& grid);

/// Strip Gamma_delta = {rho <= delta} adjacent to both walls.
struct LayerRegion {
    double delta = 0.0;
    /// Cell-centre indicator of the strip (1 inside, 0 outside).
    ScalarField mask;

    static LayerRegion make(const Grid& grid, double delta);
    bool contains(double rho) const { return rho <= delta; }
    bool resolved(const Grid& grid) const { return delta > grid.dy; }
};

}  // namespace kato
