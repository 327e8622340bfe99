#include "kato/fields/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "kato/fields/kernels.hpp"

namespace kato {

namespace {

// Adds the weighted squared row sums of f over rows whose distance satisfies keep(rho).
// Rows carry a single rho value, so selecting all rows reproduces the full sum bit-exactly.
template <class Keep>
double sum_squares_rows(const ScalarField& f, const ScalarField& rho, Keep&& keep) {
    const kernels::RowPartials p = kernels::omp::dot_rows(f, f);
    double s = 0.0;
    for (int j = 0; j < f.rows(); ++j)
        if (keep(rho(0, j))) s += p.rows[j];
    return s;
}

std::array<const ScalarField*, 4> components(const GradientTensor& t) {
    return {&t.dudx, &t.dvdy, &t.dudy, &t.dvdx};
}

}  // namespace

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }

double l2_norm(const VelocityField& f) { return std::sqrt(inner(f, f)); }

double h1_seminorm(const VelocityField& f) {
    const GradientTensor t = gradient_tensor(f);
    return std::sqrt(inner(t, t));
}

double linf_norm(const ScalarField& f) { return f.max_abs(); }

double linf_norm(const VelocityField& f) { return f.max_abs(); }

double gradient_linf(const VelocityField& f) {
    const GradientTensor t = gradient_tensor(f);
    double m = 0.0;
    for (const ScalarField* c : components(t)) m = std::max(m, c->max_abs());
    return m;
}

DissipationPair dissipation(const VelocityField& f, double layer_delta) {
    const GradientTensor t = gradient_tensor(f);
    const DistanceField rho = distance_field(f.grid());
    DissipationPair d;
    for (const ScalarField* c : components(t)) {
        const ScalarField& r = rho.at(c->stagger());
        const kernels::RowPartials p = kernels::omp::dot_rows(*c, *c);
        double full = 0.0, layer = 0.0;
        for (int j = 0; j < c->rows(); ++j) {
            full += p.rows[j];
            if (r(0, j) <= layer_delta) layer += p.rows[j];
        }
        d.full += full;
        d.layer += layer;
    }
    return d;
}

LayerNorms layer_norms(const VelocityField& f, const LayerRegion& region, const DistanceField& rho) {
    const Grid& g = f.grid();
    const double delta = region.delta;
    LayerNorms out;
    out.hardy_cutoff = 0.5 * g.dy;
    out.under_resolved = !region.resolved(g);
    auto in_layer = [delta](double r) { return r <= delta; };
    // relative slack so the first u row (rho = dy/2 up to rounding) stays in the Hardy sum
    const double cutoff = out.hardy_cutoff * (1.0 - 1e-9);

    double l2 = 0.0, hardy = 0.0;
    for (const ScalarField* c : {&f.u, &f.v}) {
        const ScalarField& r = rho.at(c->stagger());
        l2 += sum_squares_rows(*c, r, in_layer);
        for (int j = 0; j < c->rows(); ++j) {
            const double rj = r(0, j);
            if (!in_layer(rj) || rj < cutoff) continue;
            double s = 0.0;
            for (int i = 0; i < g.nx; ++i) s += (*c)(i, j) * (*c)(i, j);
            hardy += s * row_weight(g, c->stagger(), j) * g.cell_area() / (rj * rj);
        }
    }
    out.l2_layer = std::sqrt(l2);
    out.hardy_l2 = std::sqrt(hardy);
    out.linf = f.max_abs();

    const GradientTensor t = gradient_tensor(f);
    double grad_layer = 0.0, rho_grad = 0.0;
    for (const ScalarField* c : components(t)) {
        const ScalarField& r = rho.at(c->stagger());
        grad_layer += sum_squares_rows(*c, r, in_layer);
        for (int j = 0; j < c->rows(); ++j) {
            const double rj = r(0, j);
            double s = 0.0, m = 0.0;
            for (int i = 0; i < g.nx; ++i) {
                const double x = (*c)(i, j);
                s += x * x;
                m = std::max(m, std::abs(x));
            }
            rho_grad += s * rj * rj * row_weight(g, c->stagger(), j) * g.cell_area();
            out.grad_linf = std::max(out.grad_linf, m);
            out.rho_grad_linf = std::max(out.rho_grad_linf, rj * m);
            out.rho2_grad_linf = std::max(out.rho2_grad_linf, rj * rj * m);
        }
    }
    out.grad_l2_layer = std::sqrt(grad_layer);
    out.rho_grad_l2 = std::sqrt(rho_grad);
    out.hardy_quotient = out.grad_l2_layer > 0.0 ? out.hardy_l2 / out.grad_l2_layer : 0.0;
    return out;
}

}  // namespace kato
