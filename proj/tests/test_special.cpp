#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "modesum/numerics/quadrature.hpp"
#include "modesum/numerics/special.hpp"

using namespace modesum::numerics;
using cplx = std::complex<double>;

namespace {

// 50-term Taylor series erf(x) = (2/sqrt(pi)) sum (-1)^n x^{2n+1}/(n!(2n+1))
double erf_taylor(double x) {
    double term = x, sum = x;
    for (int n = 1; n < 50; ++n) {
        term *= -x * x / n;
        sum += term / (2.0 * n + 1.0);
    }
    return sum * 2.0 / std::sqrt(M_PI);
}

// erfcx(y) = (2/sqrt(pi)) int_0^inf exp(-t^2 - 2ty) dt
double erfcx_oracle(double y) {
    auto f = [y](double t) { return std::exp(-t * t - 2.0 * t * y); };
    return 2.0 / std::sqrt(M_PI) * integrate_semi_infinite(f, 1e-13).value;
}

// F(x) = int_0^x exp(-u(2x-u)) du  (u = x - t substitution, overflow-free)
double dawson_oracle(double x) {
    auto f = [x](double u) { return std::exp(-u * (2.0 * x - u)); };
    QuadOptions opt;
    opt.tol = 1e-13;
    return integrate_finite(f, 0.0, x, opt).value;
}

cplx faddeeva_oracle(cplx z) {
    const double reach = std::fabs(z.real()) + 9.0;
    auto fr = [&](double t) {
        return (std::exp(-t * t) / (z - t)).real();
    };
    auto fi = [&](double t) {
        return (std::exp(-t * t) / (z - t)).imag();
    };
    QuadOptions opt;
    opt.tol = 1e-13;
    const cplx integral(integrate_finite(fr, -reach, reach, opt).value,
                        integrate_finite(fi, -reach, reach, opt).value);
    return cplx(0.0, 1.0 / M_PI) * integral;
}

} // namespace

TEST_CASE("erf endpoints") {
    CHECK(erf_real_line(0.0) == 0.0);
    CHECK(std::fabs(erf_real_line(10.0) - 1.0) < 1e-12);
}

TEST_CASE("erf against Taylor oracle") {
    CHECK(std::fabs(erf_real_line(0.5) - erf_taylor(0.5)) < 1e-14);
    CHECK(std::fabs(erf_real_line(1.5) - erf_taylor(1.5)) < 1e-13);
}

TEST_CASE("erfcx across the matching seams") {
    for (double y : {0.0, 0.3, 1.0, 1.999, 2.001, 3.0, 5.0, 10.0, 20.0}) {
        const double oracle = erfcx_oracle(y);
        CHECK(std::fabs(erf_scaled_imag(y) - oracle) < 1e-12 * oracle);
    }
}

TEST_CASE("erfcx stays finite where erfc underflows") {
    const double y = 40.0;
    const double v = erf_scaled_imag(y);
    CHECK(v > 0.0);
    CHECK(std::fabs(v - 1.0 / (y * std::sqrt(M_PI))) < 1e-3 * v);
}

TEST_CASE("dawson against quadrature oracle") {
    for (double x : {0.05, 0.3, 1.0, 2.5, 4.0, 7.0, 9.0}) {
        const double oracle = dawson_oracle(x);
        CHECK(std::fabs(dawson(x) - oracle) < 2e-13 * (1.0 + std::fabs(oracle)));
        CHECK(std::fabs(dawson(-x) + dawson(x)) == 0.0);  // odd
    }
}

TEST_CASE("faddeeva on the axes") {
    for (double y : {0.2, 1.0, 4.0}) {
        const cplx w = faddeeva_w(cplx(0.0, y));
        CHECK(std::fabs(w.real() - erf_scaled_imag(y)) < 1e-12);
        CHECK(std::fabs(w.imag()) < 1e-12);
    }
    for (double x : {0.4, 2.0}) {
        const cplx w = faddeeva_w(cplx(x, 0.0));
        CHECK(std::fabs(w.real() - std::exp(-x * x)) < 1e-13);
        CHECK(std::fabs(w.imag() - 2.0 * dawson(x) / std::sqrt(M_PI)) < 1e-13);
    }
}

TEST_CASE("faddeeva against quadrature oracle in the upper half-plane") {
    for (cplx z : {cplx(1.0, 1.0), cplx(3.0, 0.5), cplx(0.5, 2.0), cplx(-2.0, 0.3)}) {
        const cplx w = faddeeva_w(z);
        const cplx oracle = faddeeva_oracle(z);
        CHECK(std::abs(w - oracle) < 1e-10);
    }
}

TEST_CASE("radiation bracket routes through the stable paths") {
    const double a = 0.7;
    // imaginary frequency: exp(y^2) erfc(y), real
    const cplx b1 = radiation_bracket(cplx(0.0, a));
    CHECK(b1.imag() == 0.0);
    CHECK(std::fabs(b1.real() - erf_scaled_imag(a)) < 1e-14);
    // real frequency: exp(-x^2) + 2i F(x)/sqrt(pi)
    const cplx b2 = radiation_bracket(cplx(a, 0.0));
    CHECK(std::fabs(b2.real() - std::exp(-a * a)) < 1e-14);
    CHECK(std::fabs(b2.imag() - 2.0 * dawson(a) / std::sqrt(M_PI)) < 1e-14);
}
