#pragma once

#include <functional>
#include <vector>

#include "kato/diagnostics/record.hpp"
#include "kato/dynamics/noise.hpp"

namespace kato {

/// R(t) = E||u(t)||^2 + 2 nu int_0^t E||grad u||^2 - E||u0||^2 - t nu sum ||sigma_k||^2.
struct EnergyResidual {
    std::vector<double> times;
    std::vector<double> residual;
    std::vector<double> se;
    std::vector<double> drift;  // t nu sum ||sigma_k||^2
    double max_abs() const;
};

/// Throws ConfigError unless all records share nu, dt, horizon, step count and mode count.
void require_homogeneous(const std::vector<TrajectoryRecord>& ensemble, const NoiseModel& model);

EnergyResidual energy_equality_residual(const std::vector<TrajectoryRecord>& ensemble, const NoiseModel& model);

/// Pathwise r(t): the energy residual minus the left-point Ito integral
/// 2 nu^1/2 sum_k int <u, sigma_k> dW^k.
std::vector<double> ito_residual(const TrajectoryRecord& record, const BrownianPath& path, const NoiseModel& model);

/// Ensemble comparison of the pathwise and expectation residuals. The difference is
/// the ensemble mean of the discrete martingale; its standard error sets the scale.
struct ItoConsistency {
    std::vector<double> mean_pathwise;
    std::vector<double> expectation;
    std::vector<double> se;       // standard error of the martingale mean
    double worst_ratio = 0.0;     // max |difference| / se over the supplied steps
    double mean_abs_final = 0.0;  // E|r(T)|
};

ItoConsistency ito_consistency(const std::vector<TrajectoryRecord>& ensemble, const std::vector<BrownianPath>& paths,
                               const NoiseModel& model, const std::vector<int>& steps);

struct UniformEnergyCheck {
    double lhs = 0.0;        // E sup_t ||u||^2
    double rhs_bound = 0.0;  // with the configured K
    double base = 0.0;       // E||u0||^2 + T nu^1/2 sum ||sigma_k||^2
    double noise = 0.0;      // nu^1/2 sum_k (E int <u, sigma_k>^2)^1/2
    double k = 0.0;
    double k_min = 0.0;      // smallest K for which the inequality holds
    bool satisfied = false;
    double margin = 0.0;     // rhs_bound - lhs
};

UniformEnergyCheck uniform_energy_check(const std::vector<TrajectoryRecord>& ensemble, const NoiseModel& model,
                                        double k = 2.8284271247461903);

/// phi(t) = g(t) * profile with profile divergence-free and zero on the walls.
struct MovingTestField {
    VelocityField profile;
    std::function<double(double)> g = [](double) { return 1.0; };
    std::function<double(double)> dg = [](double) { return 0.0; };
};

/// Gap between both sides of the weak formulation with a moving test function, at
/// every checkpoint. Needs a snapshot at every step (dense record).
/// Throws InvalidInputError if the profile is not zero on the walls.
std::vector<double> weak_formulation_residual(const TrajectoryRecord& record, const MovingTestField& phi,
                                              const NoiseModel& model, double trace_tolerance = 1e-10);

/// Eight smooth divergence-free fields rot(sin^2(m pi y) trig(2 pi k x / Lx)), unit norm.
std::vector<VelocityField> test_dictionary(const Grid& grid);

}  // namespace kato
