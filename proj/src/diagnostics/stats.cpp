#include "kato/diagnostics/stats.hpp"

#include <algorithm>
#include <cmath>

namespace kato {

namespace {

double pairwise(const double* x, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return x[0];
    const std::size_t h = n / 2;
    return pairwise(x, h) + pairwise(x + h, n - h);
}

}  // namespace

double ordered_sum(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    return pairwise(v.data(), v.size());
}

MeanEstimate estimate_mean(std::span<const double> values) {
    MeanEstimate e;
    e.count = static_cast<int>(values.size());
    if (values.empty()) return e;
    e.mean = ordered_sum(values) / values.size();
    if (values.size() > 1) {
        std::vector<double> sq;
        sq.reserve(values.size());
        for (double x : values) sq.push_back((x - e.mean) * (x - e.mean));
        const double var = ordered_sum(sq) / (values.size() - 1);
        e.se = std::sqrt(var / values.size());
    }
    return e;
}

std::vector<int> checkpoint_steps(int n_steps, int checkpoints) {
    std::vector<int> out;
    if (checkpoints < 1) checkpoints = 1;
    for (int c = 0; c <= checkpoints; ++c) {
        const int s = static_cast<int>(std::llround(static_cast<double>(c) * n_steps / checkpoints));
        if (out.empty() || out.back() != s) out.push_back(s);
    }
    return out;
}

std::vector<double> running_trapezoid(std::span<const double> values, std::span<const double> times) {
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t j = 1; j < values.size(); ++j)
        out[j] = out[j - 1] + 0.5 * (times[j] - times[j - 1]) * (values[j] + values[j - 1]);
    return out;
}

}  // namespace kato
