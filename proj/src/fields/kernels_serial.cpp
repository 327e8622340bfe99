#include <cmath>

#include "kato/fields/kernels.hpp"

namespace kato::kernels {

double RowPartials::total() const {
    double s = 0.0;
    for (double r : rows) s += r;
    return s;
}

namespace serial {

namespace {

double wall_tangential(const VelocityField& w, int i, int j_adjacent) {
    return w.bc == BoundaryCondition::no_slip ? 0.0 : w.u(i, j_adjacent);
}

}  // namespace

void advect(const VelocityField& a, const VelocityField& w, VelocityField& out) {
    const Grid& g = a.grid();
    const int nx = g.nx, ny = g.ny;

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double ax_e = 0.5 * (a.u.at(i, j) + a.u.at(i + 1, j));
            const double ax_w = 0.5 * (a.u.at(i - 1, j) + a.u.at(i, j));
            const double we = 0.5 * (w.u.at(i, j) + w.u.at(i + 1, j));
            const double ww = 0.5 * (w.u.at(i - 1, j) + w.u.at(i, j));

            const double ay_n = 0.5 * (a.v.at(i - 1, j + 1) + a.v.at(i, j + 1));
            const double ay_s = 0.5 * (a.v.at(i - 1, j) + a.v.at(i, j));
            const double wn =
                j + 1 < ny ? 0.5 * (w.u.at(i, j) + w.u.at(i, j + 1)) : wall_tangential(w, i, j);
            const double ws =
                j > 0 ? 0.5 * (w.u.at(i, j - 1) + w.u.at(i, j)) : wall_tangential(w, i, j);

            out.u(i, j) = (ax_e * we - ax_w * ww) / g.dx + (ay_n * wn - ay_s * ws) / g.dy;
        }
    }

    for (int i = 0; i < nx; ++i) {
        out.v(i, 0) = 0.0;
        out.v(i, ny) = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double ax_e = 0.5 * (a.u.at(i + 1, j - 1) + a.u.at(i + 1, j));
            const double ax_w = 0.5 * (a.u.at(i, j - 1) + a.u.at(i, j));
            const double we = 0.5 * (w.v.at(i, j) + w.v.at(i + 1, j));
            const double ww = 0.5 * (w.v.at(i - 1, j) + w.v.at(i, j));

            const double ay_n = 0.5 * (a.v.at(i, j) + a.v.at(i, j + 1));
            const double ay_s = 0.5 * (a.v.at(i, j - 1) + a.v.at(i, j));
            const double wn = 0.5 * (w.v.at(i, j) + w.v.at(i, j + 1));
            const double ws = 0.5 * (w.v.at(i, j - 1) + w.v.at(i, j));

            out.v(i, j) = (ax_e * we - ax_w * ww) / g.dx + (ay_n * wn - ay_s * ws) / g.dy;
        }
    }
}

void laplacian(const VelocityField& w, VelocityField& out) {
    const Grid& g = w.grid();
    const int nx = g.nx, ny = g.ny;
    const double idx2 = 1.0 / (g.dx * g.dx), idy2 = 1.0 / (g.dy * g.dy);

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double c = w.u.at(i, j);
            const double below = j > 0 ? w.u.at(i, j - 1) : -c;
            const double above = j + 1 < ny ? w.u.at(i, j + 1) : -c;
            out.u(i, j) = (w.u.at(i + 1, j) - 2.0 * c + w.u.at(i - 1, j)) * idx2 +
                          (above - 2.0 * c + below) * idy2;
        }
    }
    for (int i = 0; i < nx; ++i) {
        out.v(i, 0) = 0.0;
        out.v(i, ny) = 0.0;
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double c = w.v.at(i, j);
            out.v(i, j) = (w.v.at(i + 1, j) - 2.0 * c + w.v.at(i - 1, j)) * idx2 +
                          (w.v.at(i, j + 1) - 2.0 * c + w.v.at(i, j - 1)) * idy2;
        }
    }
}

void divergence(const VelocityField& f, ScalarField& out) {
    const Grid& g = f.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = (f.u.at(i + 1, j) - f.u.at(i, j)) / g.dx +
                        (f.v.at(i, j + 1) - f.v.at(i, j)) / g.dy;
}

void arakawa(const ScalarField& p, const ScalarField& q, ScalarField& out) {
    const Grid& g = p.grid();
    const double scale = 1.0 / (12.0 * g.dx * g.dy);
    for (int i = 0; i < g.nx; ++i) {
        out(i, 0) = 0.0;
        out(i, g.ny) = 0.0;
    }
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double j1 = (p.at(i + 1, j) - p.at(i - 1, j)) * (q.at(i, j + 1) - q.at(i, j - 1)) -
                              (p.at(i, j + 1) - p.at(i, j - 1)) * (q.at(i + 1, j) - q.at(i - 1, j));
            const double j2 = p.at(i + 1, j) * (q.at(i + 1, j + 1) - q.at(i + 1, j - 1)) -
                              p.at(i - 1, j) * (q.at(i - 1, j + 1) - q.at(i - 1, j - 1)) -
                              p.at(i, j + 1) * (q.at(i + 1, j + 1) - q.at(i - 1, j + 1)) +
                              p.at(i, j - 1) * (q.at(i + 1, j - 1) - q.at(i - 1, j - 1));
            const double j3 = p.at(i + 1, j + 1) * (q.at(i, j + 1) - q.at(i + 1, j)) -
                              p.at(i - 1, j - 1) * (q.at(i - 1, j) - q.at(i, j - 1)) -
                              p.at(i - 1, j + 1) * (q.at(i, j + 1) - q.at(i - 1, j)) +
                              p.at(i + 1, j - 1) * (q.at(i + 1, j) - q.at(i, j - 1));
            out(i, j) = (j1 + j2 + j3) * scale;
        }
    }
}

RowPartials dot_rows(const ScalarField& a, const ScalarField& b) {
    const Grid& g = a.grid();
    RowPartials r;
    r.rows.assign(a.rows(), 0.0);
    for (int j = 0; j < a.rows(); ++j) {
        double s = 0.0;
        for (int i = 0; i < g.nx; ++i) s += a(i, j) * b(i, j);
        r.rows[j] = s * row_weight(g, a.stagger(), j) * g.cell_area();
    }
    return r;
}

}  // namespace serial
}  // namespace kato::kernels
