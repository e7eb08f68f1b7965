#include "modesum/dielectric.hpp"

#include <cmath>

#include "modesum/numerics/roots.hpp"

namespace modesum {

cplx mu_discrete(const DiscreteBath& m, cplx zeta) {
    cplx s = 0.0;
    const cplx z2 = zeta * zeta;
    for (const auto& c : m.couplings) {
        const cplx den = c.omega * c.omega - z2;
        if (std::abs(den) == 0.0)
            throw PoleHit("mu_discrete: bath resonance hit");
        s += c.mass_ratio * c.omega * c.omega / den;
    }
    return cplx(0.0, -1.0) * zeta * s;
}

cplx polarizability_denominator(const DiscreteBath& m, cplx zeta) {
    return -zeta * zeta + m.omega_0 * m.omega_0 -
           cplx(0.0, 1.0) * zeta * mu_discrete(m, zeta);
}

cplx polarizability_denominator(const DrudeLorentz& m, cplx zeta) {
    return -zeta * zeta + m.omega_0 * m.omega_0 - cplx(0.0, 1.0) * zeta * m.gamma;
}

cplx epsilon(const DielectricModel& model, cplx zeta, bool unphysical_sheet) {
    return std::visit(
        [&](const auto& m) -> cplx {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Vacuum>) {
                return 1.0;
            } else if constexpr (std::is_same_v<M, PerfectMirror>) {
                throw DomainError("epsilon: perfect mirror has no permittivity");
            } else if constexpr (std::is_same_v<M, DrudeLorentz>) {
                if (zeta.imag() < 0.0 && !unphysical_sheet)
                    throw DomainError(
                        "epsilon: causal permittivity requested below the real "
                        "axis without unphysical_sheet");
                const cplx den = zeta * (zeta + cplx(0.0, m.gamma)) -
                                 m.omega_0 * m.omega_0;
                if (std::abs(den) == 0.0) throw PoleHit("epsilon: pole hit");
                return 1.0 - m.omega_p * m.omega_p / den;
            } else {
                const cplx den = polarizability_denominator(m, zeta);
                if (std::abs(den) == 0.0) throw PoleHit("epsilon: pole of eps_N");
                return 1.0 + m.omega_p * m.omega_p / den;
            }
        },
        model);
}

cplx polarizability_generalized(const DielectricModel& model, cplx zeta) {
    return std::visit(
        [&](const auto& m) -> cplx {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Vacuum>) {
                throw DomainError("polarizability: vacuum has no oscillators");
            } else if constexpr (std::is_same_v<M, PerfectMirror>) {
                throw DomainError("polarizability: perfect mirror is not a material");
            } else {
                const cplx den = polarizability_denominator(m, zeta);
                if (std::abs(den) < 1e-300)
                    throw PoleHit("polarizability: denominator vanishes");
                return 1.0 / den;
            }
        },
        model);
}

DiscreteBath make_ohmic_bath(double omega_p, double omega_0, double gamma,
                             double omega_c, int n, BathGrid grid,
                             double omega_min) {
    if (omega_c <= 0.0) throw DomainError("make_ohmic_bath: omega_c > 0 required");
    if (gamma < 0.0) throw DomainError("make_ohmic_bath: gamma >= 0 required");
    DiscreteBath bath{omega_p, omega_0, {}};
    if (n <= 0 || gamma == 0.0) return bath;

    bath.couplings.reserve(n);
    const double c0 = 2.0 * gamma / M_PI;
    if (grid == BathGrid::linear) {
        const double dw = omega_c / n;
        for (int j = 0; j < n; ++j) {
            const double w = (j + 0.5) * dw;
            bath.couplings.push_back({w, c0 * dw / (w * w)});
        }
    } else {
        const double dl = std::log(omega_c / omega_min) / n;
        for (int j = 0; j < n; ++j) {
            const double w = omega_min * std::exp((j + 0.5) * dl);
            bath.couplings.push_back({w, c0 * (w * dl) / (w * w)});
        }
    }
    return bath;
}

std::vector<double> epsilon_pole_frequencies(const DiscreteBath& m,
                                             double omega_max) {
    // Zeros of the real function den(w) = -w^2 + w0^2 - i w mu(w), which is
    // real for real w.  den has poles at the bath frequencies; between
    // consecutive poles it sweeps monotonically-enough for a bracketed scan.
    auto den = [&m](double w) {
        return polarizability_denominator(m, cplx(w, 0.0)).real();
    };
    std::vector<double> edges{0.0};
    for (const auto& c : m.couplings)
        if (c.omega < omega_max) edges.push_back(c.omega);
    edges.push_back(omega_max);

    std::vector<double> poles;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        const double pad = 1e-11 * (b - a) + 1e-300;
        auto found = numerics::find_real_roots(den, a + pad, b - pad, 96);
        for (double r : found) poles.push_back(r);
    }
    return poles;
}

} // namespace modesum
