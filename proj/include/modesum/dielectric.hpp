#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "modesum/errors.hpp"

namespace modesum {

using cplx = std::complex<double>;

// Dissipative Drude-Lorentz mirror:
//   eps(w) = 1 - wp^2 / (w(w + i gamma) - w0^2)
// gamma = 0, w0 = 0 is the lossless plasma model.
struct DrudeLorentz {
    double omega_p;
    double omega_0 = 0.0;
    double gamma = 0.0;
};

struct BathCoupling {
    double omega;       // bath oscillator frequency, > 0
    double mass_ratio;  // m_j / m, > 0
};

// Reversible mirror: the matter oscillator coupled to a countable bath.
// eps_N stays real and even in frequency until the continuum limit.
struct DiscreteBath {
    double omega_p;
    double omega_0 = 0.0;
    std::vector<BathCoupling> couplings;  // omega strictly increasing
};

struct PerfectMirror {};  // idealized unit-reflectivity marker
struct Vacuum {};         // eps == 1

using DielectricModel = std::variant<DrudeLorentz, DiscreteBath, PerfectMirror, Vacuum>;

// mu(zeta) = -i zeta sum_j (m_j/m) w_j^2 / (w_j^2 - zeta^2).
// On the imaginary axis zeta = i xi this is real and positive.
cplx mu_discrete(const DiscreteBath& m, cplx zeta);

// Inverse-polarizability denominator -zeta^2 + w0^2 - i zeta mu(zeta),
// shared by epsilon and the generalized polarizability.
cplx polarizability_denominator(const DiscreteBath& m, cplx zeta);
cplx polarizability_denominator(const DrudeLorentz& m, cplx zeta);

// Complex permittivity.  DrudeLorentz is causal: evaluation below the
// real axis requires unphysical_sheet = true (analytic continuation onto
// the unphysical Riemann sheet, used only by the resonance search).
// DiscreteBath is a real rational function, valid everywhere off its
// poles.  PerfectMirror has no permittivity.
cplx epsilon(const DielectricModel& model, cplx zeta, bool unphysical_sheet = false);

// Generalized polarizability in units of e^2/m:
//   alpha(zeta) = 1 / (-zeta^2 + w0^2 - i zeta mu(zeta)),
// with mu = gamma constant for the Drude-Lorentz model.
cplx polarizability_generalized(const DielectricModel& model, cplx zeta);

enum class BathGrid { linear, log };

// Bath discretization reproducing the ohmic spectral density, so that
// the continuum limit of mu gives mu(w) = gamma up to the cutoff:
// mass_ratio_j = (2 gamma / pi) * dw_j / w_j^2 (quadrature weight of the
// ohmic density).  The linear grid is midpoint on (0, omega_c]; the log
// grid is midpoint in ln(omega) on [omega_min, omega_c] and resolves
// mu(i xi) down to much smaller xi for a given N.
DiscreteBath make_ohmic_bath(double omega_p, double omega_0, double gamma,
                             double omega_c, int n,
                             BathGrid grid = BathGrid::linear,
                             double omega_min = 1e-3);

// Poles of eps_N (zeros of the polarizability denominator) in (0, omega_max),
// ascending.  These are the matter+bath normal modes, where slab spectra
// accumulate.
std::vector<double> epsilon_pole_frequencies(const DiscreteBath& m, double omega_max);

} // namespace modesum
