#pragma once

#include <stdexcept>
#include <string>

namespace modesum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive scheme ran out of subdivision / iteration budget.
struct NonConvergence : Error { using Error::Error; };

// Evaluation requested outside a model's validity domain
// (e.g. a causal permittivity below the real axis without the
// explicit unphysical-sheet flag).
struct DomainError : Error { using Error::Error; };

// Evaluation at (or numerically on top of) a pole of the model.
struct PoleHit : Error { using Error::Error; };

// A zero of the function sits on the contour used for winding counts.
struct BoundaryZero : Error { using Error::Error; };

// Root scan and argument-principle count disagree.
struct CountMismatch : Error { using Error::Error; };

// Subtracted resonance sum violates the Im-part sum rule.
struct SumRuleViolation : Error { using Error::Error; };

// log(1 - alpha*G) left the principal branch domain.
struct StrongCouplingError : Error { using Error::Error; };

// Geometric preconditions violated (e.g. form factor too large for
// the point-evaluation approximation).
struct GeometryError : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

} // namespace modesum
