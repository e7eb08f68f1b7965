#pragma once

#include "modesum/dielectric.hpp"

namespace modesum::polder {

// Harmonically bound charge with a Gaussian form factor
//   rho(r) = exp(-pi r^2/(2a^2)) / (2a^2)^{3/2},  |rho(k)|^2 = e^{-k^2 a^2/pi}.
// The point limit a -> 0 exists only as an explicit limit study; the
// dressed response then develops the familiar acausal w^3 term.
struct GaussianDipole {
    double m0;  // bare mass
    double K0;  // bare spring constant
    double q;   // charge coupling
    double a;   // radius > 0
};

struct HalfSpace {
    DielectricModel mirror;
    double distance;  // z0 > 0 from dipole to surface
};

// renormalized mass and shifted spring constant
inline double renormalized_mass(const GaussianDipole& d) {
    return d.m0 + 2.0 * d.q * d.q / (3.0 * d.a);
}
inline double shifted_spring(const GaussianDipole& d) {
    return d.K0 + M_PI * d.q * d.q / (6.0 * d.a * d.a * d.a);
}

// Isotropic form-factor average of the free Green tensor,
//   <G0>(w) = (2w^2/3a)[1 + i a w e^{-w^2 a^2/pi}(1+erf(i a w/sqrt(pi)))]
//             - pi/(6 a^3),
// evaluated without cancellation on the real axis (Dawson path) and the
// imaginary axis (scaled-erfc path); upper half-plane via the Faddeeva
// function for diagnostics.
cplx vacuum_green_avg(const GaussianDipole& d, cplx zeta);

// alpha_d(w) = q^2 / (-m0 w^2 + K0 - q^2 <G0>(w))
//            = q^2 / (-m w^2 + K - i w Gamma(w)).
cplx dressed_polarizability(const GaussianDipole& d, cplx zeta);

// Gamma(w) = (2 q^2 w^2/3) e^{-w^2 a^2/pi} (1 + erf(i a w/sqrt(pi)));
// Re Gamma >= 0 on the real axis (radiation reaction is passive).
cplx radiative_damping(const GaussianDipole& d, double omega);

// Scattered half-space Green components at the dipole, imaginary
// frequency; diagonal with xx = yy:
//   Gxx = (1/2) int dk (k/kap) e^{-2 kap z0} [kap^2 r_TM - xi^2 r_TE]
//   Gzz =       int dk (k^3/kap) e^{-2 kap z0} r_TM,   kap = sqrt(k^2+xi^2)
struct GreenComponents {
    double xx = 0.0, zz = 0.0;
};
GreenComponents scattered_green_halfspace(const HalfSpace& hs, double z0,
                                          double xi, double tol = 1e-11);
// d/dz0 of the above (extra -2 kap under the integral)
GreenComponents scattered_green_halfspace_dz(const HalfSpace& hs, double z0,
                                             double xi, double tol = 1e-11);

// E = int dxi/(2pi) tr ln[1 - alpha_d(i xi) <G_chi>(i xi, z0)]; the
// form-factor average is point evaluation, valid for a < z0/20.
double cp_energy_exact(const GaussianDipole& d, const HalfSpace& hs,
                       double tol = 1e-9);

// first order: E = -int dxi/(2pi) tr[alpha_d <G_chi>]
double cp_energy_perturbative(const GaussianDipole& d, const HalfSpace& hs,
                              double tol = 1e-9);

enum class ForceMode { exact, perturbative };

// F = int dxi/(2pi) tr[alpha_Tot d_z0 <G_chi>] with the totally dressed
// alpha_Tot = [1 - alpha_d <G_chi>]^{-1} alpha_d (exact mode), or
// alpha_d itself (perturbative); negative = toward the surface.
double cp_force(const GaussianDipole& d, const HalfSpace& hs, ForceMode mode,
                double tol = 1e-9);

} // namespace modesum::polder
