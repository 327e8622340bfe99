#pragma once

#include <array>
#include <string>
#include <vector>

#include "kato/dynamics/euler.hpp"
#include "kato/fields/grid.hpp"
#include "kato/fields/norms.hpp"

namespace kato {

/// xi(r) = 1 - r^3 (10 - 15 r + 6 r^2) on [0, 1], 0 beyond. C^2 at both ends.
double cutoff(double r);
double cutoff_d1(double r);
double cutoff_d2(double r);

/// 2D skew matrix a = [[0, a12], [-a12, 0]] stored by its one component at nodes,
/// with div a = rot(a12).
ScalarField skew_from_euler(const EulerState& state, double trace_tolerance = 1e-12);

struct CorrectorBundle {
    double delta = 0.0;
    DistanceField rho;
    ScalarField z;    // xi(rho / delta) at nodes
    ScalarField a12;  // skew component at nodes
    VelocityField v;  // div(z a) = rot(z a12)
    LayerRegion region;
};

/// Requires dy < delta <= 1/2; delta <= dy throws ResolutionError.
CorrectorBundle build_corrector(const EulerState& state, double delta);

/// Tangential wall value of d/dy of a node field, one-sided second order.
/// Returns the bottom and top traces at column i.
double wall_trace(const ScalarField& node_field, int i, bool top);

/// max over both walls of |tangential trace of (u_bar - v)|, with the trace of
/// z a12 expanded by the product rule at the wall nodes.
double trace_mismatch(const CorrectorBundle& bundle);

/// Names of the eight layer norms in report order.
inline constexpr std::array<const char*, 8> corrector_norm_names{
    "v_linf", "v_l2", "dtv_l2", "grad_linf", "grad_l2", "rho_grad_linf", "rho2_grad_linf", "rho_grad_l2"};
/// Upper-bound exponents of delta for the eight norms.
inline constexpr std::array<double, 8> corrector_exponents{0.0, 0.5, 0.5, -1.0, -0.5, 0.0, 1.0, 0.5};

struct CorrectorRow {
    double delta = 0.0;
    std::array<double, 8> norms{};
    double hardy_quotient = 0.0;
    double trace_mismatch = 0.0;
    bool under_resolved = false;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Least-squares fit of log(y) against log(x) with a 95% t-interval on the slope.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct CorrectorReport {
    double dt = 0.0;
    std::vector<CorrectorRow> rows;
    std::array<SlopeFit, 8> slopes{};
};

/// Builds the corrector for every delta and fits the eight norm slopes. d/dt v uses
/// centred differences of bundles built from Euler steps of +-dt.
/// Requires at least 4 deltas (ConfigError) each in (4 dy, 1/2] (ResolutionError
/// below, ConfigError above).
CorrectorReport corrector_scaling_report(const EulerState& state, const std::vector<double>& deltas, double dt,
                                         const StepOptions& options = {});

}  // namespace kato
