#pragma once

#include <utility>
#include <vector>

#include "modesum/lifshitz.hpp"
#include "modesum/planar.hpp"

namespace modesum::modes {

struct SpectrumOptions {
    // slab resonance ladders accumulate at the poles of eps_N; windows
    // narrower than pole_window_min * pole frequency are skipped whole,
    // so the truncation boundary is shared by every gap length
    double pole_window_min = 1e-11;
    int scan_points_per_cell = 12;
    long max_modes = 600'000;
    bool validate_counts = true;  // argument-principle cross-check
};

struct ModeSpectrum {
    Channel channel;
    double omega_max = 0.0;
    std::vector<double> frequencies;  // strictly increasing, in (0, omega_max)
    // unenumerated slivers hugging eps_N poles (lo, hi), and their width sum
    std::vector<std::pair<double, double>> excluded;
    double excluded_width = 0.0;
};

// All cavity modes of the boxed configuration in (0, omega_max):
// zeros of D^p(omega) excluding the eps_N pole points.  Requires a
// DiscreteBath (or Vacuum) mirror and finite slab thickness.  Raises
// CountMismatch when the argument-principle cross-check disagrees with
// the scan on a pole-free segment.
ModeSpectrum real_mode_spectrum(const PlanarCavity& cavity, Channel ch,
                                double omega_max,
                                const SpectrumOptions& opt = {});

struct ModeSumResult {
    double value = 0.0;        // E(L) - E(L_ref) for this channel
    double cutoff_scale = 0.0; // Gaussian weight scale Omega_c
    double cutoff_drift = 0.0; // |value - value at 0.8 Omega_c|
    double tail_bound = 0.0;   // bound on the skipped pole-window pairs
    double background = 0.0;   // free-photon correction term
    long modes_gap = 0, modes_ref = 0;
};

// Casimir energy of one transverse channel as a literal zero-point sum:
//   (1/2) [ sum_m w_m g(w_m) ]_{L_ref}^{L} + (L_ref - L)/(2 pi) * I_bg,
// where g(w) = exp(-(w/Omega_c)^2) with Omega_c = omega_max/5 smoothly
// truncates both spectra and I_bg restores the free-photon background of
// the length difference (the reference box is longer, so its raw sum
// contains extra free-vacuum energy in proportion to L_ref - L).
ModeSumResult sum_over_modes_energy(const PlanarCavity& cavity, Channel ch,
                                    double L_ref, double omega_max,
                                    const SpectrumOptions& opt = {});

// Imaginary-axis contour value of the same channel difference at T = 0:
//   (1/2 pi) int_0^inf ln[ G^p(i xi, L) / G^p(i xi, L_ref) ] dxi.
// Independent route used to validate the literal mode sum.
double channel_contour_energy(const PlanarCavity& cavity, Channel ch,
                              double L_ref, double tol = 1e-10);

} // namespace modesum::modes
