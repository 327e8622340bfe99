#pragma once

#include <span>
#include <vector>

namespace kato {

/// Sum of the values sorted ascending, added pairwise. The result does not depend
/// on the order in which the values are supplied.
double ordered_sum(std::span<const double> values);

struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;  // sample standard deviation / sqrt(M); 0 for M = 1
    int count = 0;
};

MeanEstimate estimate_mean(std::span<const double> values);

/// Checkpoint step indices round(c n / C), c = 0..C, without repeats.
std::vector<int> checkpoint_steps(int n_steps, int checkpoints);

/// Trapezoid rule on a step grid: returns the running integral at every node.
std::vector<double> running_trapezoid(std::span<const double> values, std::span<const double> times);

}  // namespace kato
