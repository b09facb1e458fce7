#pragma once

#include <stdexcept>
#include <string>

namespace flatctl {

// Base class for all library errors. Catch this to handle any failure mode;
// catch the derived types to branch on cause.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters, malformed config files, out-of-contract arguments.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside a function's domain, or a requested value outside a range
// (e.g. sigmoid inverse at or beyond a saturation bound). Never clamped.
class DomainError : public Error {
public:
    using Error::Error;
};

// Operation not defined for the given family/kind (e.g. derivative of a step).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Kinematic target outside the reachable workspace.
class ReachabilityError : public Error {
public:
    using Error::Error;
};

// Target admits a continuum of solutions (no canonical choice).
class AmbiguityError : public Error {
public:
    using Error::Error;
};

// Decoupling matrix determinant below the guard threshold.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Non-finite state or derivative encountered during integration.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Adaptive step size underflow; the problem is too stiff for an explicit method.
class StiffnessError : public Error {
public:
    using Error::Error;
};

// Numerical procedure failed to converge (quadrature, root finding).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Control authority lost: the plant nonlinearity is saturated where the law
// needs to invert its slope.
class SaturationError : public Error {
public:
    using Error::Error;
};

} // namespace flatctl
