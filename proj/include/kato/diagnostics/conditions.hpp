#pragma once

#include <vector>

#include "kato/diagnostics/record.hpp"
#include "kato/diagnostics/stats.hpp"

namespace kato {

struct KatoFunctionals {
    MeanEstimate total;  // nu int_0^T E||grad u||^2
    MeanEstimate layer;  // same over the layer of width c nu
    double layer_delta = 0.0;
    bool under_resolved = false;  // c nu <= dy
};

/// Failed records are skipped. Throws ConfigError if no usable record is left.
KatoFunctionals kato_functionals(const std::vector<TrajectoryRecord>& ensemble, const Grid& grid);

struct ConvergenceMetrics {
    MeanEstimate m1;  // max over checkpoints of E||u - ubar||^2 (se taken at the maximizing checkpoint)
    MeanEstimate m2;  // E max over checkpoints ||u - ubar||^2
    int m1_checkpoint = 0;
    std::vector<double> checkpoint_times;
    std::vector<double> mean_gap;              // E||u - ubar||^2 per checkpoint
    std::vector<std::vector<double>> weak_gaps;  // [checkpoint][dictionary field]
    std::vector<std::vector<double>> weak_se;
    double weak_gap_max = 0.0;
};

/// NS snapshots and Euler snapshots must sit on the same grid and checkpoint times.
ConvergenceMetrics convergence_metrics(const std::vector<TrajectoryRecord>& ensemble, const EulerTrajectory& euler);

struct ConditionReport {
    double nu = 0.0;
    double layer_delta = 0.0;
    int paths_used = 0;
    int paths_failed = 0;
    int checkpoints = 0;
    bool under_resolved = false;
    MeanEstimate m1, m2, d_total, d_layer;
    double weak_gap_max = 0.0;
    ConvergenceMetrics metrics;

    /// M2 >= M1 >= 0 and D_total >= D_layer >= 0, with a relative slack for rounding.
    bool invariants_hold(double rel_tol = 1e-12) const;
};

ConditionReport condition_report(const std::vector<TrajectoryRecord>& ensemble, const EulerTrajectory& euler,
                                 const Grid& grid);

}  // namespace kato
