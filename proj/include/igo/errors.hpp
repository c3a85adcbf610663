#pragma once

#include <stdexcept>
#include <string>

namespace igo {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation nodes (or plant decay rates) coincide beyond the separation threshold.
class DegenerateNodes : public Error {
public:
    using Error::Error;
};

/// A parameter set violates a construction invariant; the message names it.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// A modulation function was evaluated at a non-positive output value.
class NonPositiveOutput : public Error {
public:
    using Error::Error;
};

/// The scalar cycle equation could not be bracketed; internal invariant violation.
class BracketingFailure : public Error {
public:
    using Error::Error;
};

/// A Jacobian was requested at a state that does not satisfy the fixed-point residual gate.
class NotAFixedPoint : public Error {
public:
    using Error::Error;
};

/// Spectral radius too close to 1 for a convergence time to be meaningful.
class MarginalStability : public Error {
public:
    using Error::Error;
};

/// A design step has no solution for the requested data; the message names the step.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// The slope search found no point satisfying the stability test.
class NoStableSlopes : public Error {
public:
    using Error::Error;
};

/// Malformed run configuration (schema violation, unknown key, bad value).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace igo
