#pragma once

#include <stdexcept>
#include <string>

namespace varstring {

// Base class for all failures raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Endpoint speed reaches or exceeds the wave speed: |l'(t)| >= 1.
struct SpeedLimit : Error { using Error::Error; };

// Interval length drops to zero or below on the requested horizon.
struct Collapse : Error { using Error::Error; };

// Damping factor eta < 0.
struct NegativeDamping : Error { using Error::Error; };

// eta = 1 (or inside the guard band): the reflection quotient is
// undefined and the series machinery refuses to run.
struct TransparentDamping : Error { using Error::Error; };

// Requested point lies outside the constructed map domain.
struct DomainExceeded : Error { using Error::Error; };

// Seed for the functional-equation recursion violates the matching
// conditions (value gap, positivity, or endpoint derivative ratio).
struct SeedMismatch : Error { using Error::Error; };

// Characteristic bounce count exceeds the configured cap.
struct RecursionDepth : Error { using Error::Error; };

// Adaptive quadrature exceeded its refinement budget.
struct QuadratureFailure : Error { using Error::Error; };

// Evaluation point outside [0, l(t)] or outside a table's range.
struct OutOfDomain : Error { using Error::Error; };

// Tabulation stencil not available (internal consistency failure).
struct GridTooCoarse : Error { using Error::Error; };

// |1 + eta*l'(t)| ~ 0 while the quotient form of E' is requested.
struct SingularBoundary : Error { using Error::Error; };

// beta(T) < L: the extinction time lies beyond the horizon.
struct NotReached : Error { using Error::Error; };

// Malformed or fail-closed-rejected configuration input.
struct ConfigError : Error { using Error::Error; };

} // namespace varstring
