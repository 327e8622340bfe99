#pragma once

#include <vector>

#include "kato/diagnostics/energy.hpp"
#include "kato/ensemble/ensemble.hpp"

namespace kato {

/// Energy relations of one ensemble at one time step.
struct AuditLevel {
    double dt = 0.0;
    EnergyResidual residual;
    ItoConsistency ito;
    UniformEnergyCheck uniform;
    std::vector<int> checkpoint_steps;
    double max_abs_residual = 0.0;  // max_t |R(t)|
    double weak_residual = 0.0;     // max over checkpoints and audited paths
    double drift_reference_error = 0.0;  // |drift(T) - T nu N|
    int paths_failed = 0;
};

struct EnergyAudit {
    std::vector<AuditLevel> levels;
    std::vector<double> order_residual;  // between consecutive levels
    std::vector<double> order_ito;       // of E|r(T)|
    std::vector<double> order_weak;
};

/// Runs the ensemble of config.nu_list.front() at every dt and evaluates the energy
/// equality, the pathwise Ito formula, the uniform bound and the weak formulation
/// (against a decaying dictionary field, on weak_paths dense paths).
EnergyAudit energy_audit(const ExperimentConfig& config, const std::vector<double>& dts, int weak_paths = 1);

/// log(a/b) / log(h_a/h_b)
double observed_order(double a, double b, double ha, double hb);

}  // namespace kato
