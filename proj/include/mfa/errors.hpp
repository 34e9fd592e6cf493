#pragma once

#include <stdexcept>
#include <string>

namespace mfa {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad subsystem dimension (e.g. ladder_ops with dim < 2).
struct DimensionError : Error {
    using Error::Error;
};

// Operator/state layouts do not match, or a layout is unusable.
struct LayoutError : Error {
    using Error::Error;
};

// A matrix that must be Hermitian is not, beyond tolerance.
struct HermiticityError : Error {
    using Error::Error;
};

// A model premise is violated (off-resonance, dispersive regime, ...).
// The CLI maps this family to exit code 3.
struct ModelAssumptionError : Error {
    using Error::Error;
};

// xi evaluation too close to the resonance nu = lambda*sqrt(n+1).
struct PoleError : ModelAssumptionError {
    int resonant_n = -1;
    PoleError(const std::string& msg, int n) : ModelAssumptionError(msg), resonant_n(n) {}
};

// Truncation leakage above threshold.
struct LeakageError : ModelAssumptionError {
    using ModelAssumptionError::ModelAssumptionError;
};

// Regime verdict is invalid and no override was requested.
struct RegimeError : ModelAssumptionError {
    using ModelAssumptionError::ModelAssumptionError;
};

// Analytic sector solver refused: nu + 4*mu <= 0.
struct StabilityError : ModelAssumptionError {
    using ModelAssumptionError::ModelAssumptionError;
};

// Configuration problems (schema, types, invalid values). Exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// Out-of-domain numeric input to a closed-form expression.
struct DomainError : ConfigError {
    using ConfigError::ConfigError;
};

// Filesystem failures, annotated with the path involved.
struct IoError : Error {
    using Error::Error;
};

} // namespace mfa
