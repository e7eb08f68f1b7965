#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "modesum/numerics/quadrature.hpp"
#include "modesum/numerics/roots.hpp"
#include "modesum/polder.hpp"

using namespace modesum;
using namespace modesum::polder;
using namespace modesum::numerics;

namespace {

GaussianDipole dip(double a) { return {1.0, 1.0, 1.0, a}; }

// transverse + longitudinal k-integral oracle for <G0>(i xi)
double green_avg_oracle(const GaussianDipole& d, double xi) {
    const double beta = d.a * d.a / M_PI;
    QuadOptions opt;
    opt.tol = 1e-13;
    auto ff = [beta](double k) { return std::exp(-beta * k * k); };
    // transverse: -(4 xi^2/(3 pi)) int k^2 |rho|^2/(k^2+xi^2) dk
    auto ft = [&](double k) {
        return k * k * ff(k) / (k * k + xi * xi);
    };
    const double t = -4.0 * xi * xi / (3.0 * M_PI) *
                     integrate_semi_infinite_from(ft, 0.0, 1.0 / std::sqrt(beta), opt)
                         .value;
    // longitudinal: -(2/(3 pi)) int k^2 |rho|^2 dk
    auto fl = [&](double k) { return k * k * ff(k); };
    const double l = -2.0 / (3.0 * M_PI) *
                     integrate_semi_infinite_from(fl, 0.0, 1.0 / std::sqrt(beta), opt)
                         .value;
    return t + l;
}

} // namespace

TEST_CASE("static limit is the Coulombic spring shift") {
    const auto d = dip(0.7);
    const cplx g = vacuum_green_avg(d, 0.0);
    CHECK(std::abs(g - cplx(-M_PI / (6.0 * 0.343))) < 1e-14);
}

TEST_CASE("gaussian form factor is the transform of rho") {
    const double a = 0.8;
    auto rho = [a](double r) {
        return std::exp(-M_PI * r * r / (2.0 * a * a)) /
               std::pow(2.0 * a * a, 1.5);
    };
    QuadOptions opt;
    opt.tol = 1e-12;
    for (double k : {0.5, 1.5, 3.0}) {
        auto f = [&](double r) {
            return 4.0 * M_PI / k * r * std::sin(k * r) * rho(r);
        };
        const double rk = integrate_semi_infinite_from(f, 0.0, a, opt).value;
        CHECK(std::fabs(rk * rk - std::exp(-k * k * a * a / M_PI)) < 1e-10);
    }
}

TEST_CASE("imaginary-axis value matches the k-integral oracle") {
    const auto d = dip(0.6);
    for (double xi : {0.2, 1.0, 4.0}) {
        const cplx g = vacuum_green_avg(d, cplx(0.0, xi));
        CHECK(std::fabs(g.imag()) < 1e-14);
        CHECK(std::fabs(g.real() - green_avg_oracle(d, xi)) < 1e-8);
    }
}

TEST_CASE("crossing relation of the averaged Green function") {
    const auto d = dip(0.5);
    for (cplx z : {cplx(0.7, 0.4), cplx(1.5, 0.1), cplx(0.2, 2.0)}) {
        const cplx lhs = std::conj(vacuum_green_avg(d, z));
        const cplx rhs = vacuum_green_avg(d, -std::conj(z));
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(lhs));
    }
}

TEST_CASE("static polarizability and the renormalized constants") {
    const auto d = dip(0.3);
    const double K = shifted_spring(d);
    CHECK(std::abs(dressed_polarizability(d, 0.0) - cplx(1.0 / K)) < 1e-13);
    // small-omega fit of q^2/alpha_d recovers m and K
    const double h = 1e-3;
    const cplx d0 = d.q * d.q / dressed_polarizability(d, 0.0);
    const cplx dh = d.q * d.q / dressed_polarizability(d, cplx(h, 0.0));
    CHECK(std::fabs(d0.real() - K) < 1e-12);
    const double m_fit = (d0.real() - dh.real()) / (h * h);
    CHECK(std::fabs(m_fit - renormalized_mass(d)) < 2e-2 * renormalized_mass(d));
}

TEST_CASE("polarizability decreases monotonically on the imaginary axis") {
    const auto d = dip(0.4);
    double prev = 1e300;
    for (double xi = 0.05; xi < 20.0; xi *= 1.6) {
        const cplx al = dressed_polarizability(d, cplx(0.0, xi));
        CHECK(std::fabs(al.imag()) < 1e-15);
        CHECK(al.real() > 0.0);
        CHECK(al.real() < prev);
        prev = al.real();
    }
}

TEST_CASE("radiative damping: sign, zero and leading order") {
    const auto d = dip(0.5);
    CHECK(std::abs(radiative_damping(d, 0.0)) == 0.0);
    for (double w : {1e-3, 3e-3, 1e-2}) {
        const double re = radiative_damping(d, w).real();
        CHECK(std::fabs(re - 2.0 / 3.0 * w * w) < 1e-3 * (2.0 / 3.0 * w * w));
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const double w = -8.0 + 16.0 * ((rng() >> 11) * 0x1.0p-53);
        CHECK(radiative_damping(d, w).real() >= 0.0);
    }
}

TEST_CASE("point limit recovers the acausal w^3 coefficient") {
    // Im of q^2/alpha_d -> -(2/3) q^2 w^3 as a -> 0
    const double w = 0.01;
    double fit = 0.0;
    for (double a : {1e-2, 1e-3, 1e-4}) {
        const auto d = dip(a);
        const cplx den = d.q * d.q / dressed_polarizability(d, cplx(w, 0.0));
        fit = -den.imag() / (w * w * w);
        CHECK(fit > 0.0);
    }
    CHECK(std::fabs(fit - 2.0 / 3.0) < 0.01 * (2.0 / 3.0));
}

TEST_CASE("upper half-plane causality scan") {
    // no zeros of the inverse response above the real axis for finite a;
    // the point limit regenerates the runaway pole
    auto denom = [](const GaussianDipole& d) {
        return [d](cplx w) {
            return -d.m0 * w * w + d.K0 - d.q * d.q * vacuum_green_avg(d, w);
        };
    };
    const auto healthy = dip(0.5);
    CHECK(count_zeros(denom(healthy), Rectangle{-4.0, 4.0, 0.1, 4.0}, 64) == 0);
    // any finite radius keeps the response causal; the runaway pole at
    // w ~ i 3 m/(2 q^2) belongs to the strict point-limit form
    const auto small = dip(1e-3);
    CHECK(count_zeros(denom(small), Rectangle{-4.0, 4.0, 0.1, 4.0}, 64) == 0);
    const auto d0 = dip(1e-3);
    auto point_form = [d0](cplx w) {
        const double m = renormalized_mass(d0), K = shifted_spring(d0);
        return -m * w * w + K -
               cplx(0.0, 2.0 / 3.0) * d0.q * d0.q * w * w * w;
    };
    const double wr = 1.5 * d0.m0 / (d0.q * d0.q) * renormalized_mass(d0) / d0.m0;
    const int n = count_zeros(point_form, Rectangle{-0.2 * wr, 0.2 * wr, 0.05 * wr, 3.0 * wr}, 96);
    CHECK(n >= 1);
}

TEST_CASE("image-dipole limit of the scattered components") {
    HalfSpace hs{PerfectMirror{}, 2.0};
    const auto g = scattered_green_halfspace(hs, 2.0, 0.0);
    const double z3 = 8.0;
    CHECK(std::fabs(g.xx - 1.0 / (8.0 * z3)) < 1e-9 / z3);
    CHECK(std::fabs(g.zz - 1.0 / (4.0 * z3)) < 1e-9 / z3);
    CHECK(std::fabs(g.zz - 2.0 * g.xx) < 1e-9 / z3);

    HalfSpace vac{Vacuum{}, 2.0};
    const auto gv = scattered_green_halfspace(vac, 2.0, 0.5);
    CHECK(gv.xx == 0.0);
    CHECK(gv.zz == 0.0);
}

TEST_CASE("strong plasma mirrors approach the ideal-image components") {
    const double z0 = 3.0, xi = 0.4;
    HalfSpace pm{PerfectMirror{}, z0};
    const auto gp = scattered_green_halfspace(pm, z0, xi);
    double prev = 1e300;
    for (double wp : {3.0, 10.0, 30.0}) {
        HalfSpace hs{DrudeLorentz{wp, 0.0, 0.0}, z0};
        const auto g = scattered_green_halfspace(hs, z0, xi);
        const double gap = std::fabs(g.zz - gp.zz) + std::fabs(g.xx - gp.xx);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 0.05 * (std::fabs(gp.zz) + std::fabs(gp.xx)));
}

TEST_CASE("far-zone Casimir-Polder asymptote") {
    const auto d = dip(1.0);
    const double K = shifted_spring(d);
    const double alpha0 = d.q * d.q / K;
    const double wres = std::sqrt(K / renormalized_mass(d));
    const double z0 = 1e3 / wres;
    HalfSpace hs{PerfectMirror{}, z0};
    const double e = cp_energy_perturbative(d, hs, 1e-9);
    const double asym = -3.0 * alpha0 / (8.0 * M_PI * z0 * z0 * z0 * z0);
    CHECK(std::fabs(e / asym - 1.0) < 0.01);
}

TEST_CASE("vacuum half-space costs nothing") {
    const auto d = dip(0.05);
    HalfSpace hs{Vacuum{}, 2.0};
    CHECK(cp_energy_exact(d, hs) == 0.0);
    CHECK(cp_energy_perturbative(d, hs) == 0.0);
    CHECK(cp_force(d, hs, ForceMode::exact) == 0.0);
}

TEST_CASE("exact vs perturbative: second-order scaling and ordering") {
    const auto d = dip(0.05);
    double prev_ratio = 0.0;
    for (double z0 : {2.0, 4.0, 8.0}) {
        HalfSpace hs{PerfectMirror{}, z0};
        const double ee = cp_energy_exact(d, hs, 1e-11);
        const double ep = cp_energy_perturbative(d, hs, 1e-11);
        // multiple reflections deepen the well: exact <= perturbative
        CHECK(ee <= ep);
        const double ratio = std::fabs(ee - ep) / (ep * ep);
        // |exact - pert| ~ pert^2: the coefficient drifts only slowly
        if (prev_ratio > 0.0) {
            CHECK(ratio < 3.0 * prev_ratio);
            CHECK(ratio > prev_ratio / 3.0);
        }
        prev_ratio = ratio;
    }
    // and the relative gap closes with distance
    HalfSpace near{PerfectMirror{}, 1.5}, far{PerfectMirror{}, 16.0};
    const double gn = std::fabs(cp_energy_exact(d, near) /
                                    cp_energy_perturbative(d, near) -
                                1.0);
    const double gf = std::fabs(cp_energy_exact(d, far) /
                                    cp_energy_perturbative(d, far) -
                                1.0);
    CHECK(gf < gn);
}

TEST_CASE("force equals the numerical energy derivative") {
    const auto d = dip(0.04);
    for (double z0 : {1.2, 1.5, 2.0, 2.5, 3.0}) {
        HalfSpace hs{DrudeLorentz{2.0, 0.0, 0.1}, z0};
        const double f = cp_force(d, hs, ForceMode::exact, 1e-10);
        const double h = 5e-3 * z0;
        auto e_at = [&](double z) {
            HalfSpace h2 = hs;
            h2.distance = z;
            return cp_energy_exact(d, h2, 1e-11);
        };
        const double de = (-e_at(z0 + 2 * h) + 8 * e_at(z0 + h) -
                           8 * e_at(z0 - h) + e_at(z0 - 2 * h)) /
                          (12.0 * h);
        CHECK(std::fabs(f + de) < 1e-5 * std::fabs(f));
        CHECK(f < 0.0);  // attraction
    }
}

TEST_CASE("guards") {
    const auto d = dip(0.5);
    HalfSpace close{PerfectMirror{}, 1.0};  // a = z0/2
    CHECK_THROWS_AS((void)cp_energy_exact(d, close), GeometryError);
    GaussianDipole unstable{1.0, -10.0, 1.0, 1.0};  // K < 0
    CHECK_THROWS_AS((void)dressed_polarizability(unstable, 0.0), DomainError);
}
