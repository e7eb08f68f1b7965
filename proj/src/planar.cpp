#include "modesum/planar.hpp"

#include <cmath>

namespace modesum {

namespace {

// principal sqrt, with the negative-real-axis cut resolved to the
// retarded side (Im <= 0), so kappa is continuous on the closed upper
// half-plane including the w + i0+ limit
cplx branch_sqrt(cplx w2) {
    if (w2.imag() == 0.0 && w2.real() < 0.0)
        return {0.0, -std::sqrt(-w2.real())};
    return std::sqrt(w2);
}

cplx tanh_guarded(cplx z) {
    if (z.real() > 40.0) return 1.0;
    if (z.real() < -40.0) return -1.0;
    return std::tanh(z);
}

// kappa_m * tanh(kappa_m d): even in kappa_m, regular at kappa_m = 0
cplx x_tanh(cplx km, double d) {
    const cplx zd = km * d;
    if (std::abs(zd) < 1e-4) {
        const cplx z2 = zd * zd;
        return km * zd * (1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 15.0);
    }
    return km * tanh_guarded(zd);
}

// kappa_m * coth(kappa_m d): even in kappa_m, -> 1/d at kappa_m = 0
cplx y_coth(cplx km, double d) {
    const cplx zd = km * d;
    if (std::abs(zd) < 1e-4) {
        const cplx z2 = zd * zd;
        return (1.0 / d) * (1.0 + z2 / 3.0 - z2 * z2 / 45.0);
    }
    return km / tanh_guarded(zd);
}

} // namespace

cplx kappa(double k, cplx zeta) { return branch_sqrt(k * k - zeta * zeta); }

cplx kappa_m(const DielectricModel& model, double k, cplx zeta,
             bool unphysical_sheet) {
    const cplx eps = epsilon(model, zeta, unphysical_sheet);
    return branch_sqrt(k * k - eps * zeta * zeta);
}

cplx dispersion_D(const PlanarCavity& cavity, Channel ch, cplx omega) {
    if (!cavity.slab_thickness)
        throw DomainError("dispersion_D: boxed configuration needs finite d");
    if (std::holds_alternative<PerfectMirror>(cavity.mirror))
        throw DomainError("dispersion_D: perfect mirror has no slab dispersion");
    const double d = *cavity.slab_thickness;
    const double L = cavity.gap;
    const cplx kap = kappa(ch.k, omega);
    const cplx km = kappa_m(cavity.mirror, ch.k, omega);
    const cplx ekl = std::exp(kap * L);
    if (ch.pol == Polarization::TE) {
        const cplx x = x_tanh(km, d);
        const cplx p = kap + x, q = kap - x;
        return ekl * p * p - q * q / ekl;
    }
    const cplx eps = epsilon(cavity.mirror, omega);
    const cplx y = y_coth(km, d);
    const cplx p = eps * kap + y, q = eps * kap - y;
    return ekl * p * p - q * q / ekl;
}

cplx dispersion_kD(const PlanarCavity& cavity, Channel ch, cplx omega) {
    if (!cavity.slab_thickness)
        throw DomainError("dispersion_kD: boxed configuration needs finite d");
    const double d = *cavity.slab_thickness;
    const double L = cavity.gap;
    const cplx k2 = ch.k * ch.k - omega * omega;
    const cplx kap = branch_sqrt(k2);
    const cplx km = kappa_m(cavity.mirror, ch.k, omega);
    // kappa*D expanded as 2(A^2+B^2) kappa sinh(kappa L) + 4 kappa^2 B A' ...
    // every factor below is even in both kappa and kappa_m
    const cplx ks = kap * std::sinh(kap * L);  // even in kappa
    const cplx c = std::cosh(kap * L);
    if (ch.pol == Polarization::TE) {
        const cplx x = x_tanh(km, d);
        return 2.0 * (k2 + x * x) * ks + 4.0 * k2 * x * c;
    }
    const cplx eps = epsilon(cavity.mirror, omega);
    const cplx y = y_coth(km, d);
    return 2.0 * (eps * eps * k2 + y * y) * ks + 4.0 * k2 * eps * y * c;
}

cplx reflection_rho(const PlanarCavity& cavity, Channel ch, cplx zeta,
                    bool unphysical_sheet) {
    if (std::holds_alternative<PerfectMirror>(cavity.mirror))
        return 1.0;  // only rho^2 enters; unit reflectivity
    const cplx kap = kappa(ch.k, zeta);
    const cplx km = kappa_m(cavity.mirror, ch.k, zeta, unphysical_sheet);
    cplx t;  // kappa_m * tanh or coth, -> kappa_m in the bulk limit
    if (!cavity.slab_thickness)
        t = km;
    else if (ch.pol == Polarization::TE)
        t = x_tanh(km, *cavity.slab_thickness);
    else
        t = y_coth(km, *cavity.slab_thickness);
    if (ch.pol == Polarization::TE) return (kap - t) / (kap + t);
    const cplx eps = epsilon(cavity.mirror, zeta, unphysical_sheet);
    return (eps * kap - t) / (eps * kap + t);
}

cplx reflection_ratio_G(const PlanarCavity& cavity, Channel ch, cplx zeta,
                        bool unphysical_sheet) {
    if (std::holds_alternative<Vacuum>(cavity.mirror) && !cavity.slab_thickness)
        return 1.0;
    const cplx rho = reflection_rho(cavity, ch, zeta, unphysical_sheet);
    const cplx kap = kappa(ch.k, zeta);
    return 1.0 - rho * rho * std::exp(-2.0 * kap * cavity.gap);
}

double fresnel(const DielectricModel& model, Channel ch, double xi) {
    if (xi < 0.0) throw DomainError("fresnel: xi >= 0 required");
    if (std::holds_alternative<PerfectMirror>(model))
        return ch.pol == Polarization::TM ? 1.0 : -1.0;
    if (std::holds_alternative<Vacuum>(model)) return 0.0;
    if (xi == 0.0) {
        if (ch.pol == Polarization::TE) return 0.0;
        // electrostatic limit of r_TM; unbounded eps(i 0+) gives 1
        const bool metallic = std::visit(
            [](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, DrudeLorentz> ||
                              std::is_same_v<M, DiscreteBath>)
                    return m.omega_0 == 0.0;
                else
                    return false;
            },
            model);
        if (metallic) return 1.0;
        const double e0 = epsilon(model, 0.0).real();
        return (e0 - 1.0) / (e0 + 1.0);
    }
    const cplx z(0.0, xi);
    const double kap = kappa(ch.k, z).real();
    const double km = kappa_m(model, ch.k, z).real();
    if (ch.pol == Polarization::TE) return (kap - km) / (kap + km);
    const double eps = epsilon(model, z).real();
    return (eps * kap - km) / (eps * kap + km);
}

} // namespace modesum
