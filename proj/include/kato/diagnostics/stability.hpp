#pragma once

#include <vector>

#include "kato/diagnostics/record.hpp"
#include "kato/dynamics/forcing.hpp"

namespace kato {

struct GronwallCheck {
    std::vector<double> times;
    std::vector<double> lhs;  // ||(u - ubar)(t)||^2 at checkpoints
    std::vector<double> rhs;
    double grad_bound = 0.0;
    double force_term = 0.0;  // zero for the unforced bound
    double worst_ratio = 0.0; // max lhs / rhs over checkpoints with rhs > 0
    double first_violation = -1.0;  // time of the first lhs > (1 + margin) rhs, or -1
    bool satisfied = true;
};

/// Largest stored gradient sup-norm of a trajectory.
double max_gradient(const EulerTrajectory& traj);

/// ||(u - ubar)(t)||^2 <= exp(2 t G) ||u0 - ubar0||^2 at every checkpoint, up to the margin.
GronwallCheck gronwall_bound_check(const EulerTrajectory& u, const EulerTrajectory& ubar, double grad_bound,
                                   double margin = 0.1);

/// ||f||_{L^2(0,T;H)} with the time integral on the trajectory's time grid.
double force_norm(const PreparedForcing& f, const std::vector<double>& times);
double force_difference_norm(const PreparedForcing& f, const PreparedForcing& g, const std::vector<double>& times);

/// The forced bound with the term 2 sqrt(T) ||f - fbar|| (sqrt(2||u0||^2 + 4T||f||^2) + sqrt(2||ubar0||^2 + 4T||fbar||^2))
/// added inside the exponential factor.
GronwallCheck forced_gronwall_bound_check(const EulerTrajectory& u, const EulerTrajectory& ubar,
                                          const PreparedForcing& f, const PreparedForcing& fbar,
                                          double grad_bound, double margin = 0.1);

struct EnergyEstimate {
    double sup_energy = 0.0;
    double bound = 0.0;  // 2||u0||^2 + 4T||f||^2
    double margin = 0.0;
    bool satisfied = false;
};

EnergyEstimate energy_estimate_check(const EulerTrajectory& traj, const PreparedForcing& f);

}  // namespace kato
