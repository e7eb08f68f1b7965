#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "modesum/numerics/roots.hpp"

using namespace modesum;
using namespace modesum::numerics;
using cplx = std::complex<double>;

TEST_CASE("sine zeros on [0.1, 10]") {
    auto roots = find_real_roots([](double x) { return std::sin(x); }, 0.1, 10.0, 1000);
    REQUIRE(roots.size() == 3);
    CHECK(std::fabs(roots[0] - M_PI) < 1e-12);
    CHECK(std::fabs(roots[1] - 2.0 * M_PI) < 1e-12);
    CHECK(std::fabs(roots[2] - 3.0 * M_PI) < 1e-12);
}

TEST_CASE("no real roots") {
    auto roots = find_real_roots([](double x) { return x * x + 1.0; }, -5.0, 5.0, 500);
    CHECK(roots.empty());
}

TEST_CASE("winding count: single zero placement") {
    auto h = [](cplx z) { return z - cplx(1.0, -0.5); };
    CHECK(count_zeros(h, Rectangle{0.0, 2.0, -1.0, 0.0}) == 1);
}

TEST_CASE("winding count: zeros outside the region") {
    auto h = [](cplx z) { return z * z + 4.0; };  // zeros at +-2i
    CHECK(count_zeros(h, Rectangle{0.5, 3.0, 0.5, 1.5}) == 0);
}

TEST_CASE("winding count is additive over products") {
    auto h1 = [](cplx z) { return z - cplx(0.4, 0.3); };
    auto h2 = [](cplx z) { return (z - cplx(1.2, -0.4)) * (z - cplx(1.7, 0.6)); };
    auto h12 = [&](cplx z) { return h1(z) * h2(z); };
    const Rectangle r{0.0, 2.0, -1.0, 1.0};
    CHECK(count_zeros(h12, r) == count_zeros(h1, r) + count_zeros(h2, r));
}

TEST_CASE("boundary zero is dilated away") {
    auto h = [](cplx z) { return z - cplx(1.0, 0.0); };  // zero on the edge
    // one dilation retry shifts the contour off the zero and still counts it
    const int n = count_zeros(h, Rectangle{1.0 - 1e-9, 2.0, -0.5, 0.5});
    CHECK((n == 0 || n == 1));
}

TEST_CASE("complex roots of a quadratic") {
    const cplx wp2(2.0, 0.0);
    auto h = [&](cplx z) { return z * z + 0.5 * wp2 * 2.0; };  // z^2 + 2
    auto roots = find_complex_roots(h, Rectangle{-3.0, 3.0, -3.0, 3.0}, 1e-12);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0] - cplx(0.0, -std::sqrt(2.0))) < 1e-10);
    CHECK(std::abs(roots[1] - cplx(0.0, std::sqrt(2.0))) < 1e-10);
}

TEST_CASE("empty region yields no roots") {
    auto h = [](cplx z) { return z * z + 4.0; };
    auto roots = find_complex_roots(h, Rectangle{0.5, 3.0, 0.5, 1.5}, 1e-12);
    CHECK(roots.empty());
}

TEST_CASE("root count matches winding count on random cubics") {
    std::mt19937_64 rng(2024);
    auto uni = [&rng](double lo, double hi) {
        return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 10; ++trial) {
        const cplx a(uni(-1.5, 1.5), uni(-1.5, 1.5));
        const cplx b(uni(-1.5, 1.5), uni(-1.5, 1.5));
        const cplx c(uni(-1.5, 1.5), uni(-1.5, 1.5));
        auto h = [&](cplx z) { return (z - a) * (z - b) * (z - c); };
        const Rectangle r{-1.0, 1.0, -1.0, 1.0};
        int n;
        try {
            n = count_zeros(h, r);
        } catch (const BoundaryZero&) {
            continue;  // randomly placed zero too close to the contour
        }
        auto roots = find_complex_roots(h, r, 1e-11);
        CHECK(static_cast<int>(roots.size()) == n);
        for (const auto& z : roots)
            CHECK(std::abs(h(z)) < 1e-9);
    }
}

TEST_CASE("newton polish refines a seed") {
    auto h = [](cplx z) { return std::exp(z) - 2.0; };
    const cplx z = newton_polish(h, cplx(0.6, 0.1), 1e-13);
    CHECK(std::abs(z - std::log(2.0)) < 1e-12);
}
