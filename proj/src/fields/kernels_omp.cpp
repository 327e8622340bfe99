#include <omp.h>

#include "kato/fields/kernels.hpp"

namespace kato::kernels {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

namespace omp {

namespace {

// Left/right periodic neighbour indices for column i.
struct Columns {
    std::vector<int> left, right;
    explicit Columns(int nx) : left(nx), right(nx) {
        for (int i = 0; i < nx; ++i) {
            left[i] = i == 0 ? nx - 1 : i - 1;
            right[i] = i == nx - 1 ? 0 : i + 1;
        }
    }
};

}  // namespace

void advect(const VelocityField& a, const VelocityField& w, VelocityField& out) {
    const Grid& g = a.grid();
    const int nx = g.nx, ny = g.ny;
    const double dx = g.dx, dy = g.dy;
    const bool no_slip = w.bc == BoundaryCondition::no_slip;
    const Columns col(nx);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double* au = a.u.row(j);
        const double* wu = w.u.row(j);
        const double* wu_s = j > 0 ? w.u.row(j - 1) : nullptr;
        const double* wu_n = j + 1 < ny ? w.u.row(j + 1) : nullptr;
        const double* av_s = a.v.row(j);
        const double* av_n = a.v.row(j + 1);
        double* o = out.u.row(j);
        for (int i = 0; i < nx; ++i) {
            const int il = col.left[i], ir = col.right[i];
            const double ax_e = 0.5 * (au[i] + au[ir]);
            const double ax_w = 0.5 * (au[il] + au[i]);
            const double we = 0.5 * (wu[i] + wu[ir]);
            const double ww = 0.5 * (wu[il] + wu[i]);
            const double ay_n = 0.5 * (av_n[il] + av_n[i]);
            const double ay_s = 0.5 * (av_s[il] + av_s[i]);
            const double wall = no_slip ? 0.0 : wu[i];
            const double wn = wu_n ? 0.5 * (wu[i] + wu_n[i]) : wall;
            const double ws = wu_s ? 0.5 * (wu_s[i] + wu[i]) : wall;
            o[i] = (ax_e * we - ax_w * ww) / dx + (ay_n * wn - ay_s * ws) / dy;
        }
    }

    double* v0 = out.v.row(0);
    double* vn = out.v.row(ny);
    for (int i = 0; i < nx; ++i) v0[i] = vn[i] = 0.0;

#pragma omp parallel for schedule(static)
    for (int j = 1; j < ny; ++j) {
        const double* au_s = a.u.row(j - 1);
        const double* au_n = a.u.row(j);
        const double* av = a.v.row(j);
        const double* av_s = a.v.row(j - 1);
        const double* av_n = a.v.row(j + 1);
        const double* wv = w.v.row(j);
        const double* wv_s = w.v.row(j - 1);
        const double* wv_n = w.v.row(j + 1);
        double* o = out.v.row(j);
        for (int i = 0; i < nx; ++i) {
            const int il = col.left[i], ir = col.right[i];
            const double ax_e = 0.5 * (au_s[ir] + au_n[ir]);
            const double ax_w = 0.5 * (au_s[i] + au_n[i]);
            const double we = 0.5 * (wv[i] + wv[ir]);
            const double ww = 0.5 * (wv[il] + wv[i]);
            const double ay_n = 0.5 * (av[i] + av_n[i]);
            const double ay_s = 0.5 * (av_s[i] + av[i]);
            const double wn = 0.5 * (wv[i] + wv_n[i]);
            const double ws = 0.5 * (wv_s[i] + wv[i]);
            o[i] = (ax_e * we - ax_w * ww) / dx + (ay_n * wn - ay_s * ws) / dy;
        }
    }
}

void laplacian(const VelocityField& w, VelocityField& out) {
    const Grid& g = w.grid();
    const int nx = g.nx, ny = g.ny;
    const double idx2 = 1.0 / (g.dx * g.dx), idy2 = 1.0 / (g.dy * g.dy);
    const Columns col(nx);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double* r = w.u.row(j);
        const double* rs = j > 0 ? w.u.row(j - 1) : nullptr;
        const double* rn = j + 1 < ny ? w.u.row(j + 1) : nullptr;
        double* o = out.u.row(j);
        for (int i = 0; i < nx; ++i) {
            const double c = r[i];
            const double below = rs ? rs[i] : -c;
            const double above = rn ? rn[i] : -c;
            o[i] = (r[col.right[i]] - 2.0 * c + r[col.left[i]]) * idx2 + (above - 2.0 * c + below) * idy2;
        }
    }

    double* v0 = out.v.row(0);
    double* vn = out.v.row(ny);
    for (int i = 0; i < nx; ++i) v0[i] = vn[i] = 0.0;

#pragma omp parallel for schedule(static)
    for (int j = 1; j < ny; ++j) {
        const double* r = w.v.row(j);
        const double* rs = w.v.row(j - 1);
        const double* rn = w.v.row(j + 1);
        double* o = out.v.row(j);
        for (int i = 0; i < nx; ++i) {
            const double c = r[i];
            o[i] = (r[col.right[i]] - 2.0 * c + r[col.left[i]]) * idx2 + (rn[i] - 2.0 * c + rs[i]) * idy2;
        }
    }
}

void divergence(const VelocityField& f, ScalarField& out) {
    const Grid& g = f.grid();
    const int nx = g.nx;
    const double dx = g.dx, dy = g.dy;
    const Columns col(nx);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < g.ny; ++j) {
        const double* u = f.u.row(j);
        const double* vs = f.v.row(j);
        const double* vn = f.v.row(j + 1);
        double* o = out.row(j);
        for (int i = 0; i < nx; ++i) o[i] = (u[col.right[i]] - u[i]) / dx + (vn[i] - vs[i]) / dy;
    }
}

void arakawa(const ScalarField& p, const ScalarField& q, ScalarField& out) {
    const Grid& g = p.grid();
    const int nx = g.nx, ny = g.ny;
    const double scale = 1.0 / (12.0 * g.dx * g.dy);
    const Columns col(nx);

    double* o0 = out.row(0);
    double* on = out.row(ny);
    for (int i = 0; i < nx; ++i) o0[i] = on[i] = 0.0;

#pragma omp parallel for schedule(static)
    for (int j = 1; j < ny; ++j) {
        const double* ps = p.row(j - 1);
        const double* pc = p.row(j);
        const double* pn = p.row(j + 1);
        const double* qs = q.row(j - 1);
        const double* qc = q.row(j);
        const double* qn = q.row(j + 1);
        double* o = out.row(j);
        for (int i = 0; i < nx; ++i) {
            const int l = col.left[i], r = col.right[i];
            const double j1 = (pc[r] - pc[l]) * (qn[i] - qs[i]) - (pn[i] - ps[i]) * (qc[r] - qc[l]);
            const double j2 = pc[r] * (qn[r] - qs[r]) - pc[l] * (qn[l] - qs[l]) -
                              pn[i] * (qn[r] - qn[l]) + ps[i] * (qs[r] - qs[l]);
            const double j3 = pn[r] * (qn[i] - qc[r]) - ps[l] * (qc[l] - qs[i]) -
                              pn[l] * (qn[i] - qc[l]) + ps[r] * (qc[r] - qs[i]);
            o[i] = (j1 + j2 + j3) * scale;
        }
    }
}

RowPartials dot_rows(const ScalarField& a, const ScalarField& b) {
    const Grid& g = a.grid();
    const int rows = a.rows();
    RowPartials r;
    r.rows.assign(rows, 0.0);
    const double area = g.cell_area();
    const Stagger st = a.stagger();

#pragma omp parallel for schedule(static)
    for (int j = 0; j < rows; ++j) {
        const double* x = a.row(j);
        const double* y = b.row(j);
        double s = 0.0;
        for (int i = 0; i < g.nx; ++i) s += x[i] * y[i];
        r.rows[j] = s * row_weight(g, st, j) * area;
    }
    return r;
}

}  // namespace omp
}  // namespace kato::kernels
