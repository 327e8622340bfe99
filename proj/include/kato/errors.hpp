#pragma once

#include <stdexcept>
#include <string>

namespace kato {

/// Invalid configuration or mismatched inputs (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver failed to converge or produced non-finite values (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, int iterations = 0, double residual = 0.0)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// CFL precondition violated; the caller may retry with a smaller step.
class StepSizeError : public NumericalError {
public:
    StepSizeError(const std::string& what, double cfl) : NumericalError(what), cfl_(cfl) {}
    double cfl() const { return cfl_; }

private:
    double cfl_;
};

/// Layer width not resolved by the grid (CLI exit code 4).
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation precondition (e.g. a trace condition).
class InvalidInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kato
