#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "kato/fields/grid.hpp"

namespace kato::test {

inline constexpr double pi = std::numbers::pi;

inline ScalarField random_scalar(const Grid& g, Stagger s, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField f(g, s);
    for (double& x : f.values()) x = dist(gen);
    return f;
}

inline VelocityField random_velocity(const Grid& g, std::uint64_t seed,
                                     BoundaryCondition bc = BoundaryCondition::free) {
    return VelocityField(random_scalar(g, Stagger::u_face, seed), random_scalar(g, Stagger::v_face, seed + 1), bc);
}

inline double log2_ratio(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace kato::test
