#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "modesum/modes/real_spectrum.hpp"

using namespace modesum;
using namespace modesum::modes;

namespace {

DiscreteBath bare_plasma(double wp) { return DiscreteBath{wp, 0.0, {}}; }

} // namespace

TEST_CASE("vacuum slabs reproduce the empty-box ladder exactly") {
    // eps = 1: the box spans L + 2d with perfectly reflecting outer walls,
    // so TE modes sit at sqrt(k^2 + (n pi / (L+2d))^2)
    PlanarCavity cav{1.0, 0.337, Vacuum{}, 0.0};  // incommensurate d
    const double Lt = 1.0 + 2.0 * 0.337;
    const double k = 0.8, omega_max = 40.0;
    auto sp = real_mode_spectrum(cav, {Polarization::TE, k}, omega_max);
    REQUIRE(!sp.frequencies.empty());
    size_t n = 1;
    for (double w : sp.frequencies) {
        const double expect = std::hypot(k, n * M_PI / Lt);
        CHECK(std::fabs(w - expect) < 1e-10 * expect);
        ++n;
    }
    // ladder count in (0, omega_max)
    const double qmax = std::sqrt(omega_max * omega_max - k * k);
    CHECK(sp.frequencies.size() == static_cast<size_t>(qmax * Lt / M_PI));
}

TEST_CASE("strong plasma mirrors approach the gap-confined ladder") {
    const double wp = 300.0, L = 1.0, k = 0.6;
    PlanarCavity cav{L, 0.5, bare_plasma(wp), 0.0};
    auto sp = real_mode_spectrum(cav, {Polarization::TE, k}, 9.0);
    REQUIRE(sp.frequencies.size() >= 2);
    // TE modes below wp are confined to the gap with ~2/wp of field leak
    size_t n = 1;
    for (double w : sp.frequencies) {
        const double expect = std::hypot(k, n * M_PI / (L + 2.0 / wp));
        CHECK(std::fabs(w - expect) < 2e-2 * expect);
        ++n;
    }
}

TEST_CASE("polariton branches double the line count") {
    // a lossless oscillator mirror (N = 0, w0 > 0) splits each photon
    // line crossing the resonance; counts must match the winding check
    DiscreteBath osc{1.2, 0.9, {}};
    PlanarCavity cav{2.0, 0.8, osc, 0.0};
    auto sp = real_mode_spectrum(cav, {Polarization::TE, 0.4}, 12.0,
                                 SpectrumOptions{});
    CHECK(!sp.frequencies.empty());  // validation runs inside
    // deep in the accumulation ladder the sym/anti pair degenerates
    // below double resolution; ties are genuine doublets
    for (size_t i = 1; i < sp.frequencies.size(); ++i)
        CHECK(sp.frequencies[i] >= sp.frequencies[i - 1]);
}

TEST_CASE("one bath oscillator inserts one line away from its pole sliver") {
    const double w1 = 1.3, ratio = 1e-3;
    DiscreteBath without{1.0, 0.7, {}};
    DiscreteBath with{1.0, 0.7, {{w1, ratio}}};
    PlanarCavity c0{1.5, 0.6, without, 0.0};
    PlanarCavity c1{1.5, 0.6, with, 0.0};
    const Channel ch{Polarization::TE, 0.5};

    auto s0 = real_mode_spectrum(c0, ch, 6.0);
    auto s1 = real_mode_spectrum(c1, ch, 6.0);

    // count inside a window straddling the bath line but ending short of
    // the eps_N pole right above it; boundaries at photon-mode mid-gaps
    auto count_in = [](const ModeSpectrum& s, double lo, double hi) {
        long n = 0;
        for (double w : s.frequencies)
            if (w > lo && w < hi) ++n;
        return n;
    };
    auto poles = epsilon_pole_frequencies(with, 6.0);
    double pole_above = 10.0;
    for (double p : poles)
        if (p > w1 && p < pole_above) pole_above = p;
    REQUIRE(pole_above < 1.4);  // the shifted line sits just above w1

    const double lo = w1 - 0.25;
    const double hi = w1 + 10.0 * (pole_above - w1);
    (void)count_in;
    // the weak coupling adds the hybridized line plus the accumulation
    // ladder glued to the eps pole; away from that sliver exactly one
    // line appears
    long added = 0;
    for (double w : s1.frequencies)
        if (w > lo && w < hi && std::fabs(w - pole_above) >
                                    20.0 * (pole_above - w1) * 1e-2)
            ++added;
    for (double w : s0.frequencies)
        if (w > lo && w < hi && std::fabs(w - pole_above) >
                                    20.0 * (pole_above - w1) * 1e-2)
            --added;
    // one new line per avoided crossing: the symmetric and the
    // antisymmetric branch each cross the bath line once in this window
    CHECK(added == 2);
}

TEST_CASE("mode sum equals the contour value: vacuum box") {
    // exact cross-check of weights, cutoff and background on the
    // analytically transparent configuration
    PlanarCavity cav{1.0, 0.3, Vacuum{}, 0.0};
    const Channel ch{Polarization::TE, 0.7};
    SpectrumOptions opt;
    opt.validate_counts = false;
    auto ms = sum_over_modes_energy(cav, ch, 20.0, 150.0, opt);
    const double oracle = channel_contour_energy(cav, ch, 20.0);
    CHECK(oracle < 0.0);
    CHECK(std::fabs(ms.value - oracle) < 2e-5 * std::fabs(oracle));
    CHECK(ms.cutoff_drift < 1e-4 * std::fabs(oracle));
}

TEST_CASE("mode sum equals the contour value: discrete bath") {
    auto bath = make_ohmic_bath(1.0, 0.0, 0.1, 5.0, 8, BathGrid::log, 1e-3);
    PlanarCavity cav{2.0, 1.0, bath, 0.0};
    SpectrumOptions opt;
    opt.validate_counts = false;
    for (Channel ch : {Channel{Polarization::TE, 0.5},
                       Channel{Polarization::TM, 0.5}}) {
        auto ms = sum_over_modes_energy(cav, ch, 40.0, 75.0, opt);
        const double oracle = channel_contour_energy(cav, ch, 40.0);
        CHECK(std::fabs(ms.value - oracle) < 2e-4 * std::fabs(oracle));
    }
}

TEST_CASE("interlacing under a small gap change") {
    auto bath = make_ohmic_bath(1.0, 0.0, 0.1, 5.0, 4, BathGrid::log, 1e-2);
    PlanarCavity a{2.0, 0.5, bath, 0.0};
    PlanarCavity b{2.002, 0.5, bath, 0.0};
    const Channel ch{Polarization::TE, 0.8};
    SpectrumOptions opt;
    opt.validate_counts = false;
    auto sa = real_mode_spectrum(a, ch, 6.0, opt);
    auto sb = real_mode_spectrum(b, ch, 6.0, opt);
    // a 0.1% longer box shifts every line down a little; no line crosses
    // another, so the counts differ by at most the edge effect
    CHECK(std::llabs(static_cast<long long>(sa.frequencies.size()) -
                     static_cast<long long>(sb.frequencies.size())) <= 1);
    // each line moves continuously and stays within its spacing to the
    // neighbours: no count jump without a root crossing the window edge
    const size_t n = std::min(sa.frequencies.size(), sb.frequencies.size());
    for (size_t i = 0; i < n; ++i) {
        double spacing = 1e300;
        if (i > 0) spacing = sa.frequencies[i] - sa.frequencies[i - 1];
        if (i + 1 < n)
            spacing = std::min(spacing, sa.frequencies[i + 1] - sa.frequencies[i]);
        const double shift = std::fabs(sb.frequencies[i] - sa.frequencies[i]);
        CHECK(shift <= std::max(0.51 * spacing, 2e-3 * sa.frequencies[i]));
    }
}

TEST_CASE("guards") {
    PlanarCavity bulk{1.0, std::nullopt, bare_plasma(1.0), 0.0};
    CHECK_THROWS_AS(
        (void)real_mode_spectrum(bulk, {Polarization::TE, 0.5}, 5.0),
        DomainError);
    PlanarCavity drude{1.0, 0.5, DrudeLorentz{1.0, 0.0, 0.1}, 0.0};
    CHECK_THROWS_AS(
        (void)real_mode_spectrum(drude, {Polarization::TE, 0.5}, 5.0),
        DomainError);
    PlanarCavity cav{1.0, 0.5, bare_plasma(1.0), 0.0};
    CHECK_THROWS_AS(
        (void)sum_over_modes_energy(cav, {Polarization::TE, 0.5}, 5.0, 50.0),
        DomainError);
}
