#include "modesum/lifshitz.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "modesum/numerics/quadrature.hpp"

namespace modesum::lifshitz {

using numerics::QuadOptions;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// rho_p at the literal xi -> 0+ limit.  kappa_m(i 0) = k for every model,
// so TE loses the material and keeps only the outer box; TM keeps the
// electrostatic permittivity.
double rho_zero_limit(const PlanarCavity& cavity, Polarization pol, double k) {
    if (std::holds_alternative<PerfectMirror>(cavity.mirror)) return 1.0;
    const bool bulk = !cavity.slab_thickness;
    if (pol == Polarization::TE) {
        if (bulk) return 0.0;
        return std::exp(-2.0 * k * *cavity.slab_thickness);
    }
    const double r0 = fresnel(cavity.mirror, {Polarization::TM, 0.0}, 0.0);
    if (r0 == 1.0) return 1.0;  // unbounded eps(i0+): metallic
    const double e0 = (1.0 + r0) / (1.0 - r0);
    if (bulk) return r0;
    const double c = 1.0 / std::tanh(k * *cavity.slab_thickness);
    return (e0 - c) / (e0 + c);
}

double ln_G(const PlanarCavity& cavity, Polarization pol, double k, double xi) {
    const cplx g = reflection_ratio_G(cavity, {pol, k}, cplx(0.0, xi));
    return std::log(g.real());
}

} // namespace

double k_integral_imag_axis(const PlanarCavity& cavity, Polarization pol,
                            double xi, double tol) {
    const double L = cavity.gap;
    QuadOptions opt;
    opt.tol = tol;
    if (xi == 0.0) {
        auto f = [&](double k) {
            const double r = rho_zero_limit(cavity, pol, k);
            if (r == 0.0) return 0.0;
            return k * std::log1p(-r * r * std::exp(-2.0 * k * L)) / kTwoPi;
        };
        return numerics::integrate_semi_infinite_from(f, 0.0, 1.0 / L, opt).value;
    }
    // k = xi sinh(u): kappa = xi cosh(u), smooth down to xi -> 0
    auto f = [&](double u) {
        const double ch = std::cosh(u);
        if (xi * ch * L > 350.0) return 0.0;  // e^{-2 kappa L} underflows
        const double sh = std::sinh(u);
        const double k = xi * sh;
        return xi * xi * sh * ch * ln_G(cavity, pol, k, xi) / kTwoPi;
    };
    // kappa L = xi L cosh(u): integrand dies once cosh(u) >> 1/(xi L)
    const double u_scale = std::max(1.0, std::asinh(1.0 / (xi * L)));
    return numerics::integrate_semi_infinite_from(f, 0.0, u_scale, opt).value;
}

EnergyResult free_energy_matsubara(const PlanarCavity& cavity, double tol) {
    if (!(cavity.temperature_wavenumber > 0.0))
        throw DomainError("free_energy_matsubara: tau > 0 required");
    const double tau = cavity.temperature_wavenumber;
    if (std::holds_alternative<Vacuum>(cavity.mirror) && !cavity.slab_thickness)
        return {0.0, Route::matsubara, 0.0, 0, 0, false};

    numerics::MatsubaraMeta meta;
    auto term = [&](long l) {
        const double xi = l * tau;
        double s = 0.0;
        for (auto pol : {Polarization::TE, Polarization::TM})
            s += k_integral_imag_axis(cavity, pol, xi, 0.05 * tol);
        return s;
    };
    const double sum = numerics::matsubara_sum(term, 0.1 * tol, &meta);
    EnergyResult r;
    r.value = tau / kTwoPi * sum;
    r.route = Route::matsubara;
    r.matsubara_terms = meta.terms;
    r.abs_error = std::fabs(r.value) * tol + tau / kTwoPi * meta.tail_bound;
    return r;
}

EnergyResult energy_zero_T(const PlanarCavity& cavity, double tol) {
    if (std::holds_alternative<Vacuum>(cavity.mirror) && !cavity.slab_thickness)
        return {0.0, Route::zero_T, 0.0, 0, 0, false};
    const double L = cavity.gap;
    EnergyResult r;
    r.route = Route::zero_T;
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        auto f = [&](double xi) {
            return k_integral_imag_axis(cavity, pol, xi, 0.03 * tol) / kTwoPi;
        };
        QuadOptions opt;
        opt.tol = 0.5 * tol;
        auto q = numerics::integrate_semi_infinite_from(f, 0.0, 1.0 / L, opt);
        r.value += q.value;
        r.abs_error += q.abs_error;
        r.evaluations += q.evaluations;
    }
    return r;
}

namespace {

// Im ln G integrated over the transverse wavenumber at fixed real omega.
// Above the light line the integral runs in q = sqrt(w^2 - k^2), where
// the cavity phase 2qL is uniform and blocks of pi/(2L) bound the
// cancellation; below it runs in kappa, where the integrand is smooth
// and exponentially damped.  (k dk = -q dq = kappa dkappa.)
struct RealFreqIntegrand {
    const PlanarCavity& cavity;
    Polarization pol;
    double abs_accum = 0.0;  // integral of |Im ln G| for cancellation audit

    double im_ln_G(double k, double w) {
        const cplx g = reflection_ratio_G(cavity, {pol, k}, cplx(w, 0.0));
        // passivity keeps Re G >= 0, so the principal branch never wraps
        return std::atan2(g.imag(), g.real());
    }

    double operator()(double w) {
        const double L = cavity.gap;
        const double block = M_PI / (2.0 * L);
        QuadOptions opt;
        opt.tol = 1e-9;
        double val = 0.0;
        double mag = 0.0;
        for (double q0 = 0.0; q0 < w; q0 += block) {
            const double q1 = std::min(w, q0 + block);
            auto f = [&](double q) {
                const double k = std::sqrt((w - q) * (w + q));
                return q * im_ln_G(k, w) / kTwoPi;
            };
            auto r = numerics::integrate_finite(f, q0, q1, opt);
            val += r.value;
            mag += std::fabs(r.value);
        }
        auto fe = [&](double kap) {
            if (kap * L > 400.0) return 0.0;
            const double k = std::hypot(w, kap);
            return kap * im_ln_G(k, w) / kTwoPi;
        };
        val += numerics::integrate_semi_infinite_from(fe, 0.0, 0.5 / L, opt).value;
        abs_accum += mag;
        return val;
    }
};

} // namespace

EnergyResult free_energy_real_frequency(const PlanarCavity& cavity,
                                        double omega_max, double tol,
                                        int threads) {
    if (!(cavity.temperature_wavenumber > 0.0))
        throw DomainError("free_energy_real_frequency: tau > 0 required");
    const bool ok_mirror = std::holds_alternative<DrudeLorentz>(cavity.mirror) ||
                           std::holds_alternative<PerfectMirror>(cavity.mirror) ||
                           std::holds_alternative<Vacuum>(cavity.mirror);
    if (!ok_mirror)
        throw DomainError(
            "free_energy_real_frequency: real-axis route needs a dissipative "
            "(Drude-Lorentz) or ideal mirror");
    if (std::holds_alternative<Vacuum>(cavity.mirror) && !cavity.slab_thickness)
        return {0.0, Route::real_frequency, 0.0, 0, 0, false};

    const double tau = cavity.temperature_wavenumber;
    const double L = cavity.gap;
    // blocks of half an oscillation period keep the adaptive pass local
    const double block = M_PI / (2.0 * L);
    const long nblocks = std::max<long>(1, std::lround(omega_max / block));

    EnergyResult r;
    r.route = Route::real_frequency;
    double sum_abs = 0.0;
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        std::vector<double> vals(nblocks, 0.0);
        std::vector<double> mags(nblocks, 0.0);
        auto work = [&](long jb) {
            RealFreqIntegrand inner{cavity, pol};
            auto f = [&](double w) {
                const double wt = 1.0 / std::tanh(M_PI * w / tau);
                return wt * inner(w) / kTwoPi;
            };
            QuadOptions opt;
            opt.tol = 2e-6;
            opt.max_depth = 18;
            const double a = jb * block;
            const double b = std::min(omega_max, (jb + 1) * block);
            vals[jb] = numerics::integrate_finite(f, a, b, opt).value;
            mags[jb] = inner.abs_accum;
        };
        if (threads <= 1) {
            for (long jb = 0; jb < nblocks; ++jb) work(jb);
        } else {
            std::vector<std::thread> pool;
            std::atomic<long> next{0};
            for (int t = 0; t < threads; ++t)
                pool.emplace_back([&]() {
                    for (long jb = next++; jb < nblocks; jb = next++) work(jb);
                });
            for (auto& th : pool) th.join();
        }
        for (long jb = 0; jb < nblocks; ++jb) {  // fixed reduction order
            r.value += vals[jb];
            sum_abs += std::fabs(mags[jb]);
        }
    }
    if (sum_abs > 1e3 * std::fabs(r.value)) r.accuracy_degraded = true;
    r.abs_error = std::fabs(r.value) * tol;
    return r;
}

double pressure(const PlanarCavity& cavity, double tol) {
    const double L = cavity.gap;
    const double h = 1e-3 * L;
    auto F = [&](double gap) {
        PlanarCavity c = cavity;
        c.gap = gap;
        return cavity.temperature_wavenumber > 0.0
                   ? free_energy_matsubara(c, tol).value
                   : energy_zero_T(c, tol).value;
    };
    // 5-point central difference for dF/dL
    const double d = (-F(L + 2 * h) + 8 * F(L + h) - 8 * F(L - h) + F(L - 2 * h)) /
                     (12.0 * h);
    return -d;
}

} // namespace modesum::lifshitz
