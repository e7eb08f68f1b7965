#pragma once

#include <complex>
#include <vector>

#include "modesum/dielectric.hpp"

namespace modesum::modes {

// Test families for the sum-over-poles identity.  Both are real on the
// positive real axis and analytic off the imaginary axis, where their
// poles sit at +-i s (the admissible place), so every contour step of
// the derivation applies:
//   linear_rational_cutoff : f(w) = w s^2/(s^2 + w^2)
//     Im f(i xi + 0+) = P[ s^2 xi / (s^2 - xi^2) ]   (principal value)
//   even_rational          : f(w) = s^3/(s^2 + w^2)
//     Im f(i xi + 0+) = -(pi s^2/2) delta(xi - s)
enum class IdentityFunction { linear_rational_cutoff, even_rational };

struct IdentityCase {
    cplx omega0;              // Re >= 0, Im <= 0
    IdentityFunction f = IdentityFunction::linear_rational_cutoff;
    double cutoff_scale = 0.0;  // s; 0 picks 10*|omega0|
    double tol = 1e-10;         // quadrature target
};

struct IdentityResult {
    double lhs = 0.0;  // -(1/pi) int f(w) Im[1/(w-w0) + 1/(w+w0*)] dw
    double rhs = 0.0;  // Re f(w0) + (1/pi) int Im f(i xi+0+) Re P[...] dxi
    double gap = 0.0;
};

// Evaluates both sides of the sum-over-poles identity for one pole pair.
// Re omega0 = 0 exercises the principal-value variant; Im omega0 = 0
// collapses the left side to f(omega0) exactly.
IdentityResult identity_check(const IdentityCase& c);

// Deterministic sweep over the closed fourth quadrant, mixing generic,
// pure-imaginary and real pole positions and both families; each case is
// also re-run with the cutoff scale doubled.
std::vector<IdentityCase> make_identity_sweep(int n, unsigned long seed);

} // namespace modesum::modes
