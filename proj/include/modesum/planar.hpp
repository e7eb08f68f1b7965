#pragma once

#include <complex>
#include <optional>

#include "modesum/dielectric.hpp"

namespace modesum {

enum class Polarization { TE, TM };

struct Channel {
    Polarization pol;
    double k;  // transverse wavenumber >= 0
};

// Two identical mirrors of thickness d (nullopt = bulk) separated by a
// vacuum gap L; outer slab faces are perfectly reflecting in the boxed
// (finite-d) configuration.  Frequencies are wavenumbers (hbar = c = 1).
struct PlanarCavity {
    double gap;                            // L > 0
    std::optional<double> slab_thickness;  // d > 0, nullopt = bulk
    DielectricModel mirror;
    double temperature_wavenumber = 0.0;   // tau = 2 pi k_B T/(hbar c)
};

// kappa = sqrt(k^2 - zeta^2) with Re >= 0; on the closed upper half-plane
// the branch also satisfies Im <= 0, matching the retarded w + i0+ limit
// kappa -> -i sqrt(w^2 - k^2) above the light line.
cplx kappa(double k, cplx zeta);

// kappa_m = sqrt(k^2 - eps(zeta) zeta^2), same branch rule.
cplx kappa_m(const DielectricModel& model, double k, cplx zeta,
             bool unphysical_sheet = false);

// Schram dispersion function D^p(omega, L) for the boxed finite-slab
// cavity; its zeros are the cavity modes.  Even in kappa_m by
// construction (tanh/coth pairing).
cplx dispersion_D(const PlanarCavity& cavity, Channel ch, cplx omega);

// kappa * D^p written through even powers of kappa and kappa_m only:
// single-valued in omega (no square-root branch), real on the real axis
// for real eps_N.  Used for argument-principle counts.
cplx dispersion_kD(const PlanarCavity& cavity, Channel ch, cplx omega);

// Single-mirror amplitude ratio rho_p entering G = 1 - rho^2 e^{-2 kappa L}:
//   rho_TE = (kappa - kappa_m t)/(kappa + kappa_m t),  t = tanh(kappa_m d)
//   rho_TM = (eps kappa - kappa_m c)/(eps kappa + kappa_m c), c = coth(kappa_m d)
// Bulk mirrors replace t, c -> 1; PerfectMirror has rho^2 = 1.
cplx reflection_rho(const PlanarCavity& cavity, Channel ch, cplx zeta,
                    bool unphysical_sheet = false);

// Renormalized ratio G^p = D^p / D^p_inf = 1 - rho_p^2 e^{-2 kappa L}.
cplx reflection_ratio_G(const PlanarCavity& cavity, Channel ch, cplx zeta,
                        bool unphysical_sheet = false);

// Fresnel coefficients of the bulk mirror at imaginary frequency i*xi;
// real with |r| <= 1 for passive models.  xi = 0 is the electrostatic
// limit (r_TE = 0; r_TM = (eps0-1)/(eps0+1), 1 for an unpinned metal).
double fresnel(const DielectricModel& model, Channel ch, double xi);

} // namespace modesum
