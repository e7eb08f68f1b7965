#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "modesum/modes/identity.hpp"

using namespace modesum;
using namespace modesum::modes;

TEST_CASE("real pole pair: the left side collapses to f(omega0)") {
    for (double w : {0.3, 1.0, 2.4}) {
        IdentityCase c;
        c.omega0 = cplx(w, 0.0);
        auto r = identity_check(c);
        const double s = 10.0 * w;
        const double f = w * s * s / (s * s + w * w);
        CHECK(r.lhs == f);
        CHECK(r.gap < 1e-9 * (1.0 + std::fabs(f)));
    }
}

TEST_CASE("generic complex pole, linear cutoff family") {
    IdentityCase c;
    c.omega0 = cplx(1.0, -0.1);
    auto r = identity_check(c);
    CHECK(r.gap < 1e-8 * (1.0 + std::fabs(r.lhs)));
}

TEST_CASE("generic complex pole, even rational family") {
    IdentityCase c;
    c.omega0 = cplx(0.8, -0.3);
    c.f = IdentityFunction::even_rational;
    auto r = identity_check(c);
    CHECK(r.gap < 1e-8 * (1.0 + std::fabs(r.lhs)));
}

TEST_CASE("pure imaginary pole: principal-value branch") {
    IdentityCase c;
    c.omega0 = cplx(0.0, -0.5);
    auto r = identity_check(c);
    CHECK(r.gap < 1e-7 * (1.0 + std::fabs(r.lhs)));

    c.f = IdentityFunction::even_rational;
    auto r2 = identity_check(c);
    CHECK(r2.gap < 1e-7 * (1.0 + std::fabs(r2.lhs)));
}

TEST_CASE("sharp pole near the axis") {
    IdentityCase c;
    c.omega0 = cplx(1.0, -0.001);
    auto r = identity_check(c);
    CHECK(r.gap < 1e-7 * (1.0 + std::fabs(r.lhs)));
}

TEST_CASE("deterministic sweep stays within tolerance, cutoff doubled too") {
    auto cases = make_identity_sweep(50, 7);
    REQUIRE(cases.size() == 50);
    double worst = 0.0;
    for (auto& c : cases) {
        auto r = identity_check(c);
        worst = std::max(worst, r.gap / (1.0 + std::fabs(r.lhs)));
        IdentityCase doubled = c;
        doubled.cutoff_scale = 20.0 * std::abs(c.omega0);
        auto r2 = identity_check(doubled);
        worst = std::max(worst, r2.gap / (1.0 + std::fabs(r2.lhs)));
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("sweep reproducibility") {
    auto a = make_identity_sweep(10, 123);
    auto b = make_identity_sweep(10, 123);
    for (int i = 0; i < 10; ++i) CHECK(a[i].omega0 == b[i].omega0);
}

TEST_CASE("domain guard") {
    IdentityCase c;
    c.omega0 = cplx(-1.0, -0.5);
    CHECK_THROWS_AS((void)identity_check(c), DomainError);
}
