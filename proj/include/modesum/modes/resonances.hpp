#pragma once

#include <vector>

#include "modesum/numerics/roots.hpp"
#include "modesum/planar.hpp"

namespace modesum::modes {

// Complex resonances of one channel, split into the crossing-symmetric
// representatives (Re > 0, Im < 0) and the pure-imaginary (eddy) branch
// at omega = -i xi.  The implied full set is closed under w -> -w*.
struct ResonanceSet {
    Channel channel;
    double gap = 0.0;  // 0 marks the analytic L -> infinity reference
    std::vector<cplx> complex_pairs;
    std::vector<double> imaginary_modes;  // xi > 0, weight 1/2 in sums
    numerics::Rectangle region{0, 0, 0, 0};
    bool continuation_used = false;  // entered the unphysical sheet
};

struct ResonanceOptions {
    // validated family: kappa -> k and r_TM -> (eps-1)/(eps+1); the
    // retarded hunt (quasistatic = false) crosses the kappa branch cut
    // and is exposed as experimental only
    bool quasistatic = true;
    double tol = 1e-12;
    // roots moving less than this relative amount under dL/L = 1e-4 are
    // single-interface features and are dropped
    double l_independence_threshold = 1e-8;
};

// Zeros of the renormalized ratio G^p(w, L) continued below the real
// axis (Drude-Lorentz bulk mirrors).  The region must sit in the closed
// fourth quadrant: re_min >= 0, im_max <= 0.
ResonanceSet find_resonances(const PlanarCavity& cavity, Channel ch,
                             const numerics::Rectangle& region,
                             const ResonanceOptions& opt = {});

// The L -> infinity reference: the e^{-2 kappa L} term is dropped, so
// only the single-interface features remain.  For the quasistatic TM
// Drude family these are the double zeros of (eps + 1), available in
// closed form.
ResonanceSet reference_resonances(const PlanarCavity& cavity, Channel ch,
                                  const numerics::Rectangle& region,
                                  const ResonanceOptions& opt = {});

struct GeneralizedSumDetails {
    double sum_rule_residual = 0.0;  // |Im sum'[w]_ref^L|
    double sum_rule_scale = 0.0;     // sum'|w| over both sets
    double lambda_drift = 0.0;       // |E(Lambda) - E(10 Lambda)|
};

// E = (1/2) Re sum'_K [ w_K - (2i/pi) w_K ln(w_K / Lambda) ] taken as
// (set_L) - (set_ref); pure-imaginary members carry weight 1/2.  Throws
// SumRuleViolation when the subtracted imaginary parts fail to cancel,
// which signals missed resonances and makes the ln(Lambda) term physical.
double generalized_mode_sum(const ResonanceSet& set_L,
                            const ResonanceSet& set_ref, double Lambda,
                            GeneralizedSumDetails* details = nullptr,
                            double sum_rule_rel_tol = 1e-6);

// Per-channel Lifshitz integral in the same quasistatic family,
//   (1/2pi) int_0^inf ln[1 - r(i xi)^2 e^{-2kL}] dxi,
// the independent oracle for the generalized sum.
double quasistatic_channel_lifshitz(const PlanarCavity& cavity, Channel ch,
                                    double tol = 1e-10);

} // namespace modesum::modes
