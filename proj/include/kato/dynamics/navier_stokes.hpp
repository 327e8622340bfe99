#pragma once

#include <span>

#include "kato/dynamics/forcing.hpp"
#include "kato/dynamics/noise.hpp"
#include "kato/fields/grid.hpp"
#include "kato/fields/poisson.hpp"

namespace kato {

struct NSState {
    double time = 0.0;
    VelocityField velocity;
    double nu = 0.0;
};

struct StepOptions {
    double cfl_limit = 0.5;
    SolverOptions solver{};
    const PreparedForcing* forcing = nullptr;
};

/// max|u| dt / min(dx, dy)
double cfl_number(const VelocityField& u, double dt);

/// One splitting step of du + [N(u)u - nu Lap u + grad p] dt = f dt + nu^1/2 sum sigma_k dW^k:
/// explicit flux-form advection, implicit no-slip diffusion, additive noise, projection.
/// dW holds one increment per noise mode. Throws StepSizeError on CFL violation.
NSState ns_step(const NSState& state, double dt, const NoiseModel& model, std::span<const double> dW,
                const StepOptions& options = {});

}  // namespace kato
