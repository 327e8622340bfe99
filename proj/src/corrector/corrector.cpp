#include "kato/corrector/corrector.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <string>

#include "kato/errors.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

double cutoff(double r) {
    if (r <= 0.0) return 1.0;
    if (r >= 1.0) return 0.0;
    return 1.0 - r * r * r * (10.0 - 15.0 * r + 6.0 * r * r);
}

double cutoff_d1(double r) {
    if (r <= 0.0 || r >= 1.0) return 0.0;
    return -30.0 * r * r * (1.0 - r) * (1.0 - r);
}

double cutoff_d2(double r) {
    if (r <= 0.0 || r >= 1.0) return 0.0;
    return -60.0 * r * (1.0 - r) * (1.0 - 2.0 * r);
}

ScalarField skew_from_euler(const EulerState& state, double trace_tolerance) {
    const ScalarField& psi = state.psi;
    const Grid& g = psi.grid();
    double wall = 0.0;
    for (int i = 0; i < g.nx; ++i) wall = std::max({wall, std::abs(psi(i, 0)), std::abs(psi(i, g.ny))});
    if (wall > trace_tolerance)
        throw InvalidInputError("skew_from_euler: stream function does not vanish on the walls (max |psi| = " +
                                std::to_string(wall) + ")");
    return psi;
}

CorrectorBundle build_corrector(const EulerState& state, double delta) {
    const Grid& g = state.psi.grid();
    if (!(delta > g.dy))
        throw ResolutionError("corrector: layer width " + std::to_string(delta) + " is not resolved (dy = " +
                              std::to_string(g.dy) + ")");
    if (delta > 0.5) throw ConfigError("corrector: layer width must be <= 1/2");
    CorrectorBundle b;
    b.delta = delta;
    b.rho = distance_field(g);
    b.a12 = skew_from_euler(state);
    b.z = ScalarField(g, Stagger::node);
    for (int j = 0; j <= g.ny; ++j) {
        const double zj = cutoff(b.rho.node(0, j) / delta);
        for (int i = 0; i < g.nx; ++i) b.z(i, j) = zj;
    }
    ScalarField za = b.a12;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) za(i, j) *= b.z(i, j);
    b.v = rot(za, BoundaryCondition::free);
    b.region = LayerRegion::make(g, delta);
    return b;
}

double wall_trace(const ScalarField& f, int i, bool top) {
    const Grid& g = f.grid();
    if (!top) return (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * g.dy);
    const int n = g.ny;
    return (3.0 * f(i, n) - 4.0 * f(i, n - 1) + f(i, n - 2)) / (2.0 * g.dy);
}

double trace_mismatch(const CorrectorBundle& b) {
    const Grid& g = b.a12.grid();
    double m = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (bool top : {false, true}) {
            const int j = top ? g.ny : 0;
            const double u_bar = wall_trace(b.a12, i, top);
            const double v = b.z(i, j) * wall_trace(b.a12, i, top) + b.a12(i, j) * wall_trace(b.z, i, top);
            m = std::max(m, std::abs(u_bar - v));
        }
    return m;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw ConfigError("fit_loglog: need at least two matching points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += std::log(x[k]);
        my += std::log(y[k]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = std::log(x[k]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[k]) - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (n > 2) {
        double sse = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double r = std::log(y[k]) - (f.intercept + f.slope * std::log(x[k]));
            sse += r * r;
        }
        const double se = std::sqrt(sse / (n - 2) / sxx);
        const boost::math::students_t t(static_cast<double>(n - 2));
        const double q = boost::math::quantile(boost::math::complement(t, 0.025));
        f.ci_low = f.slope - q * se;
        f.ci_high = f.slope + q * se;
    } else {
        f.ci_low = f.ci_high = f.slope;
    }
    return f;
}

CorrectorReport corrector_scaling_report(const EulerState& state, const std::vector<double>& deltas, double dt,
                                         const StepOptions& options) {
    const Grid& g = state.psi.grid();
    if (deltas.size() < 4)
        throw ConfigError("corrector report: need at least 4 layer widths, got " + std::to_string(deltas.size()));
    for (double d : deltas) {
        if (!(d > 4.0 * g.dy))
            throw ResolutionError("corrector report: delta = " + std::to_string(d) + " is below 4 dy = " +
                                  std::to_string(4.0 * g.dy));
        if (d > 0.5) throw ConfigError("corrector report: delta = " + std::to_string(d) + " exceeds 1/2");
    }
    if (!(dt > 0.0)) throw ConfigError("corrector report: dt must be positive");

    const EulerState forward = euler_step(state, dt, options);
    const EulerState backward = euler_step(state, -dt, options);

    CorrectorReport report;
    report.dt = dt;
    report.rows.resize(deltas.size());
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double delta = deltas[k];
        const CorrectorBundle b = build_corrector(state, delta);
        VelocityField dtv = build_corrector(forward, delta).v;
        dtv -= build_corrector(backward, delta).v;
        dtv *= 1.0 / (2.0 * dt);

        const LayerNorms ln = layer_norms(b.v, b.region, b.rho);
        CorrectorRow& row = report.rows[k];
        row.delta = delta;
        row.norms = {ln.linf, l2_norm(b.v), l2_norm(dtv), ln.grad_linf, h1_seminorm(b.v),
                     ln.rho_grad_linf, ln.rho2_grad_linf, ln.rho_grad_l2};
        row.hardy_quotient = ln.hardy_quotient;
        row.trace_mismatch = trace_mismatch(b);
        row.under_resolved = ln.under_resolved;
    }
    for (std::size_t q = 0; q < 8; ++q) {
        std::vector<double> y;
        for (const CorrectorRow& r : report.rows) y.push_back(r.norms[q]);
        report.slopes[q] = fit_loglog(deltas, y);
    }
    return report;
}

}  // namespace kato
