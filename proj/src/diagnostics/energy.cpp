#include "kato/diagnostics/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kato/diagnostics/stats.hpp"
#include "kato/dynamics/stream.hpp"
#include "kato/errors.hpp"
#include "kato/fields/norms.hpp"
#include "kato/fields/operators.hpp"

namespace kato {

namespace {

double sigma_sq_sum(const NoiseModel& model) {
    double s = 0.0;
    for (double n : model.mode_norms) s += n * n;
    return s;
}

// Pathwise energy balance without the drift term: ||u||^2 + 2 nu int ||grad u||^2 - ||u0||^2.
std::vector<double> balance(const TrajectoryRecord& r) {
    const std::vector<double> integral = running_trapezoid(r.enstrophy, r.times);
    std::vector<double> out(r.times.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = r.energy[j] + 2.0 * r.nu * integral[j] - r.energy[0];
    return out;
}

// 2 nu^1/2 sum_k sum_{i<j} <u_i, sigma_k> dW_i^k at every step.
std::vector<double> martingale(const TrajectoryRecord& r, const BrownianPath& path) {
    const int n = r.n_steps();
    if (path.n_steps != n || path.n_modes != r.n_modes)
        throw ConfigError("ito residual: Brownian path does not match the record");
    std::vector<double> m(n + 1, 0.0);
    const double amp = 2.0 * std::sqrt(r.nu);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < r.n_modes; ++k) s += r.cross_at(j, k) * path.increment(j, k);
        m[j + 1] = m[j] + amp * s;
    }
    return m;
}

}  // namespace

double EnergyResidual::max_abs() const {
    double m = 0.0;
    for (double r : residual) m = std::max(m, std::abs(r));
    return m;
}

void require_homogeneous(const std::vector<TrajectoryRecord>& ens, const NoiseModel& model) {
    if (ens.empty()) throw ConfigError("ensemble is empty");
    const TrajectoryRecord& a = ens.front();
    for (const TrajectoryRecord& r : ens) {
        if (r.nu != a.nu || r.dt != a.dt || r.horizon != a.horizon || r.n_steps() != a.n_steps() ||
            r.n_modes != a.n_modes || r.times != a.times)
            throw ConfigError("ensemble records differ in nu, dt, T or time grid");
    }
    if (a.n_modes != model.n_modes) throw ConfigError("ensemble records do not match the noise model");
}

EnergyResidual energy_equality_residual(const std::vector<TrajectoryRecord>& ens, const NoiseModel& model) {
    require_homogeneous(ens, model);
    const std::size_t n = ens.front().times.size();
    std::vector<std::vector<double>> per_path;
    per_path.reserve(ens.size());
    for (const TrajectoryRecord& r : ens) per_path.push_back(balance(r));

    EnergyResidual out;
    out.times = ens.front().times;
    const double sig = sigma_sq_sum(model);
    std::vector<double> column(ens.size());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t p = 0; p < ens.size(); ++p) column[p] = per_path[p][j];
        const MeanEstimate e = estimate_mean(column);
        const double drift = out.times[j] * ens.front().nu * sig;
        out.drift.push_back(drift);
        out.residual.push_back(e.mean - drift);
        out.se.push_back(e.se);
    }
    return out;
}

std::vector<double> ito_residual(const TrajectoryRecord& r, const BrownianPath& path, const NoiseModel& model) {
    if (r.n_modes != model.n_modes) throw ConfigError("ito residual: record does not match the noise model");
    if (r.n_modes > 0 && r.cross.size() != r.times.size() * static_cast<std::size_t>(r.n_modes))
        throw ConfigError("ito residual: record lacks the noise cross terms <u, sigma_k>");
    const std::vector<double> b = balance(r);
    const std::vector<double> m = martingale(r, path);
    const double sig = sigma_sq_sum(model);
    std::vector<double> out(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) out[j] = b[j] - r.times[j] * r.nu * sig - m[j];
    return out;
}

ItoConsistency ito_consistency(const std::vector<TrajectoryRecord>& ens, const std::vector<BrownianPath>& paths,
                               const NoiseModel& model, const std::vector<int>& steps) {
    require_homogeneous(ens, model);
    if (paths.size() != ens.size()) throw ConfigError("ito consistency: one Brownian path per record required");
    const EnergyResidual R = energy_equality_residual(ens, model);
    std::vector<std::vector<double>> r, m;
    for (std::size_t p = 0; p < ens.size(); ++p) {
        r.push_back(ito_residual(ens[p], paths[p], model));
        m.push_back(martingale(ens[p], paths[p]));
    }
    ItoConsistency out;
    std::vector<double> col(ens.size()), mcol(ens.size());
    for (int j : steps) {
        for (std::size_t p = 0; p < ens.size(); ++p) {
            col[p] = r[p][j];
            mcol[p] = m[p][j];
        }
        const MeanEstimate er = estimate_mean(col);
        const MeanEstimate em = estimate_mean(mcol);
        out.mean_pathwise.push_back(er.mean);
        out.expectation.push_back(R.residual[j]);
        out.se.push_back(em.se);
        const double diff = std::abs(er.mean - R.residual[j]);
        if (em.se > 0.0)
            out.worst_ratio = std::max(out.worst_ratio, diff / em.se);
        else if (diff > 1e-14)
            out.worst_ratio = std::max(out.worst_ratio, HUGE_VAL);
    }
    std::vector<double> finals;
    for (const auto& rp : r) finals.push_back(std::abs(rp.back()));
    out.mean_abs_final = estimate_mean(finals).mean;
    return out;
}

UniformEnergyCheck uniform_energy_check(const std::vector<TrajectoryRecord>& ens, const NoiseModel& model, double k) {
    require_homogeneous(ens, model);
    const TrajectoryRecord& a = ens.front();
    std::vector<double> sup, e0;
    for (const TrajectoryRecord& r : ens) {
        sup.push_back(*std::max_element(r.energy.begin(), r.energy.end()));
        e0.push_back(r.energy.front());
    }
    UniformEnergyCheck c;
    c.k = k;
    c.lhs = estimate_mean(sup).mean;
    const double root_nu = std::sqrt(a.nu);
    c.base = estimate_mean(e0).mean + a.horizon * root_nu * sigma_sq_sum(model);
    for (int q = 0; q < model.n_modes; ++q) {
        std::vector<double> integrals;
        for (const TrajectoryRecord& r : ens) {
            std::vector<double> sq(r.times.size());
            for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = r.cross_at(static_cast<int>(j), q) * r.cross_at(static_cast<int>(j), q);
            integrals.push_back(running_trapezoid(sq, r.times).back());
        }
        c.noise += root_nu * std::sqrt(estimate_mean(integrals).mean);
    }
    c.rhs_bound = c.base + k * c.noise;
    c.satisfied = c.lhs <= c.rhs_bound;
    c.margin = c.rhs_bound - c.lhs;
    if (c.lhs <= c.base)
        c.k_min = 0.0;
    else
        c.k_min = c.noise > 0.0 ? (c.lhs - c.base) / c.noise : HUGE_VAL;
    return c;
}

std::vector<double> weak_formulation_residual(const TrajectoryRecord& r, const MovingTestField& phi,
                                              const NoiseModel& model, double trace_tolerance) {
    const int n = r.n_steps();
    if (static_cast<int>(r.snapshots.size()) != n + 1)
        throw ConfigError("weak formulation residual: record needs a snapshot at every step");
    if (r.n_modes != model.n_modes) throw ConfigError("weak formulation residual: record does not match the noise model");
    const VelocityField& p0 = phi.profile;
    if (p0.wall_normal_max() > trace_tolerance)
        throw InvalidInputError("weak formulation residual: test field has nonzero wall-normal trace");
    // the extrapolated tangential trace of a field vanishing on the walls is O(dy^2)
    if (p0.wall_tangential_max() > trace_tolerance + 0.1 * p0.max_abs())
        throw InvalidInputError("weak formulation residual: test field does not vanish on the walls");

    VelocityField prof = p0;
    prof.bc = BoundaryCondition::no_slip;
    const GradientTensor grad_phi = gradient_tensor(prof);
    std::vector<double> sig_phi(model.n_modes);
    for (int k = 0; k < model.n_modes; ++k) sig_phi[k] = inner(model.modes[k], prof);

    // integrands at every step
    std::vector<double> a(n + 1), visc(n + 1), conv(n + 1), noise_int(n + 1), pair(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double t = r.times[j];
        VelocityField u = r.snapshots[j];
        u.bc = BoundaryCondition::no_slip;
        const double up = inner(u, prof);
        pair[j] = phi.g(t) * up;
        a[j] = phi.dg(t) * up;
        visc[j] = phi.g(t) * inner(gradient_tensor(u), grad_phi);
        conv[j] = phi.g(t) * trilinear_form(u, prof, u);
        double s = 0.0;
        for (int k = 0; k < model.n_modes; ++k) s += sig_phi[k] * r.w_at(j, k);
        noise_int[j] = phi.dg(t) * s;
    }
    const auto ia = running_trapezoid(a, r.times);
    const auto iv = running_trapezoid(visc, r.times);
    const auto ic = running_trapezoid(conv, r.times);
    const auto in = running_trapezoid(noise_int, r.times);
    const double root_nu = std::sqrt(r.nu);

    std::vector<double> out;
    for (int j : r.checkpoint_steps) {
        const double t = r.times[j];
        double w_term = 0.0;
        for (int k = 0; k < model.n_modes; ++k) w_term += sig_phi[k] * r.w_at(j, k);
        const double rhs = pair[0] + ia[j] - r.nu * iv[j] + ic[j] + root_nu * phi.g(t) * w_term - root_nu * in[j];
        out.push_back(std::abs(pair[j] - rhs));
    }
    return out;
}

std::vector<VelocityField> test_dictionary(const Grid& grid) {
    struct Spec {
        int k, m;
        bool sine;
    };
    const Spec specs[8] = {{1, 1, true}, {1, 1, false}, {2, 1, true}, {0, 1, false},
                           {1, 2, true}, {2, 2, false}, {3, 1, true}, {0, 2, false}};
    std::vector<VelocityField> out;
    for (const Spec& s : specs) {
        const ScalarField psi = ScalarField::sample(grid, Stagger::node, [&](double x, double y) {
            const double a = 2.0 * s.k * x / grid.length_x;
            const double b = sinpi(s.m * y);
            return b * b * (s.sine ? sinpi(a) : cospi(a));
        });
        VelocityField f = rot(psi, BoundaryCondition::no_slip);
        f *= 1.0 / l2_norm(f);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace kato
