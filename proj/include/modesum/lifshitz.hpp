#pragma once

#include "modesum/planar.hpp"

namespace modesum {

enum class Route { matsubara, zero_T, real_frequency, mode_sum, complex_mode_sum };

// Energy (or free energy) per unit area in hbar = c = 1 units, i.e.
// hbar*c times an inverse length cubed.
struct EnergyResult {
    double value = 0.0;
    Route route = Route::zero_T;
    double abs_error = 0.0;
    long evaluations = 0;
    long matsubara_terms = 0;       // l-truncation (matsubara route)
    bool accuracy_degraded = false; // oscillation-cancellation warning
};

namespace lifshitz {

// F/A = (tau/2pi) sum_l' sum_p int k dk/(2pi) ln G^p(i xi_l),  xi_l = l tau.
// The l = 0 TE term is the literal xi -> 0+ limit of rho (which vanishes
// for bulk mirrors).
EnergyResult free_energy_matsubara(const PlanarCavity& cavity, double tol = 1e-9);

// E/A = sum_p int k dk/(2pi) int dxi/(2pi) ln G^p(i xi).
EnergyResult energy_zero_T(const PlanarCavity& cavity, double tol = 1e-9);

// Real-frequency representation
//   F/A = sum_p int k dk/(2pi) int_0^wmax dw/(2pi) coth(pi w/tau)
//         Im ln G^p(w + i0+),
// oscillatory; practical accuracy ~1e-3 relative.  omega_max must be
// chosen so the dispersive tail is below tol.
EnergyResult free_energy_real_frequency(const PlanarCavity& cavity,
                                        double omega_max, double tol = 1e-4,
                                        int threads = 1);

// -dF/dL by 5-point central difference, step 1e-3 * L.  Uses the
// Matsubara engine at tau > 0 and the zero-T engine at tau = 0.
double pressure(const PlanarCavity& cavity, double tol = 1e-9);

// Per-polarization k-integral  int k dk/(2pi) ln G^p(i xi);  exposed for
// the cross-route oracles.
double k_integral_imag_axis(const PlanarCavity& cavity, Polarization pol,
                            double xi, double tol);

} // namespace lifshitz
} // namespace modesum
