#include "modesum/polder.hpp"

#include <cmath>

#include "modesum/numerics/quadrature.hpp"
#include "modesum/numerics/special.hpp"
#include "modesum/planar.hpp"

namespace modesum::polder {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void check_dipole(const GaussianDipole& d) {
    if (!(d.a > 0.0)) throw DomainError("dipole: form-factor radius a > 0");
    if (!(shifted_spring(d) > 0.0))
        throw DomainError("dipole: shifted spring constant must stay positive");
}

} // namespace

cplx vacuum_green_avg(const GaussianDipole& d, cplx zeta) {
    check_dipole(d);
    const double a = d.a;
    const cplx bracket = numerics::radiation_bracket(a * zeta / kSqrtPi);
    const cplx corr = 1.0 + cplx(0.0, 1.0) * a * zeta * bracket;
    return 2.0 * zeta * zeta / (3.0 * a) * corr - M_PI / (6.0 * a * a * a);
}

cplx dressed_polarizability(const GaussianDipole& d, cplx zeta) {
    check_dipole(d);
    const cplx den = -d.m0 * zeta * zeta + d.K0 -
                     d.q * d.q * vacuum_green_avg(d, zeta);
    if (std::abs(den) < 1e-300)
        throw PoleHit("dressed_polarizability: resonance hit");
    return d.q * d.q / den;
}

cplx radiative_damping(const GaussianDipole& d, double omega) {
    check_dipole(d);
    const cplx bracket = numerics::radiation_bracket(d.a * omega / kSqrtPi);
    return 2.0 * d.q * d.q * omega * omega / 3.0 * bracket;
}

namespace {

GreenComponents scattered_components(const HalfSpace& hs, double z0, double xi,
                                     double tol, bool dz) {
    if (!(z0 > 0.0)) throw DomainError("scattered green: z0 > 0");
    GreenComponents g;
    if (std::holds_alternative<Vacuum>(hs.mirror)) return g;
    numerics::QuadOptions qo;
    qo.tol = tol;
    const double scale = 0.5 / z0 + 0.3 * xi;
    auto fxx = [&](double k) {
        const double kap = std::hypot(k, xi);
        if (kap * z0 > 400.0) return 0.0;
        const double rtm = fresnel(hs.mirror, {Polarization::TM, k}, xi);
        const double rte = fresnel(hs.mirror, {Polarization::TE, k}, xi);
        const double w = dz ? -2.0 * kap : 1.0;
        return 0.5 * w * (k / kap) * std::exp(-2.0 * kap * z0) *
               (kap * kap * rtm - xi * xi * rte);
    };
    auto fzz = [&](double k) {
        const double kap = std::hypot(k, xi);
        if (kap * z0 > 400.0) return 0.0;
        const double rtm = fresnel(hs.mirror, {Polarization::TM, k}, xi);
        const double w = dz ? -2.0 * kap : 1.0;
        return w * (k * k * k / kap) * std::exp(-2.0 * kap * z0) * rtm;
    };
    g.xx = numerics::integrate_semi_infinite_from(fxx, 0.0, scale, qo).value;
    g.zz = numerics::integrate_semi_infinite_from(fzz, 0.0, scale, qo).value;
    return g;
}

} // namespace

GreenComponents scattered_green_halfspace(const HalfSpace& hs, double z0,
                                          double xi, double tol) {
    return scattered_components(hs, z0, xi, tol, false);
}

GreenComponents scattered_green_halfspace_dz(const HalfSpace& hs, double z0,
                                             double xi, double tol) {
    return scattered_components(hs, z0, xi, tol, true);
}

namespace {

void check_geometry(const GaussianDipole& d, const HalfSpace& hs) {
    check_dipole(d);
    if (!(d.a < hs.distance / 20.0))
        throw GeometryError(
            "casimir-polder: point evaluation of <G_chi> needs a < z0/20");
}

double alpha_at(const GaussianDipole& d, double xi) {
    return dressed_polarizability(d, cplx(0.0, xi)).real();
}

// xi integration scale: the e^{-2 kappa z0} factor cuts at ~1/(2 z0)
template <typename F>
double xi_integral(F&& f, double z0, double tol) {
    numerics::QuadOptions qo;
    qo.tol = tol;
    return numerics::integrate_semi_infinite_from(std::forward<F>(f), 0.0,
                                                  0.5 / z0, qo)
        .value;
}

} // namespace

double cp_energy_exact(const GaussianDipole& d, const HalfSpace& hs,
                       double tol) {
    check_geometry(d, hs);
    const double z0 = hs.distance;
    auto f = [&](double xi) {
        const double al = alpha_at(d, xi);
        const GreenComponents g = scattered_green_halfspace(hs, z0, xi, 0.03 * tol);
        const double axx = 1.0 - al * g.xx;
        const double azz = 1.0 - al * g.zz;
        if (axx <= 0.0 || azz <= 0.0)
            throw StrongCouplingError(
                "cp_energy_exact: log argument left the principal domain");
        return (2.0 * std::log(axx) + std::log(azz)) / (2.0 * M_PI);
    };
    return xi_integral(f, z0, tol);
}

double cp_energy_perturbative(const GaussianDipole& d, const HalfSpace& hs,
                              double tol) {
    check_geometry(d, hs);
    const double z0 = hs.distance;
    auto f = [&](double xi) {
        const double al = alpha_at(d, xi);
        const GreenComponents g = scattered_green_halfspace(hs, z0, xi, 0.03 * tol);
        return -al * (2.0 * g.xx + g.zz) / (2.0 * M_PI);
    };
    return xi_integral(f, z0, tol);
}

double cp_force(const GaussianDipole& d, const HalfSpace& hs, ForceMode mode,
                double tol) {
    check_geometry(d, hs);
    const double z0 = hs.distance;
    auto f = [&](double xi) {
        const double al = alpha_at(d, xi);
        const GreenComponents dg =
            scattered_green_halfspace_dz(hs, z0, xi, 0.03 * tol);
        double axx = al, azz = al;
        if (mode == ForceMode::exact) {
            const GreenComponents g =
                scattered_green_halfspace(hs, z0, xi, 0.03 * tol);
            const double uxx = 1.0 - al * g.xx;
            const double uzz = 1.0 - al * g.zz;
            if (uxx <= 0.0 || uzz <= 0.0)
                throw StrongCouplingError(
                    "cp_force: dressing series does not converge");
            axx = al / uxx;
            azz = al / uzz;
        }
        return (2.0 * axx * dg.xx + azz * dg.zz) / (2.0 * M_PI);
    };
    return xi_integral(f, z0, tol);
}

} // namespace modesum::polder
