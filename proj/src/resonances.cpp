#include "modesum/modes/resonances.hpp"

#include <algorithm>
#include <cmath>

#include "modesum/numerics/quadrature.hpp"

namespace modesum::modes {

namespace {

const DrudeLorentz& drude_of(const PlanarCavity& cavity) {
    const DrudeLorentz* d = std::get_if<DrudeLorentz>(&cavity.mirror);
    if (!d)
        throw DomainError(
            "find_resonances: dissipative search needs a Drude-Lorentz mirror");
    return *d;
}

// quasistatic reflection amplitude continued anywhere: TM loses every
// square root, TE keeps kappa_m (and with it the branch cut; that path
// stays experimental)
cplx r_quasistatic(const DrudeLorentz& m, Channel ch, cplx w) {
    const cplx q = w * (w + cplx(0.0, m.gamma)) - m.omega_0 * m.omega_0;
    if (ch.pol == Polarization::TM) {
        // (eps-1)/(eps+1) = -wp^2 / (2 q - wp^2)
        return -m.omega_p * m.omega_p / (2.0 * q - m.omega_p * m.omega_p);
    }
    const cplx eps = 1.0 - m.omega_p * m.omega_p / q;
    const cplx km = std::sqrt(ch.k * ch.k - eps * w * w);
    return (ch.k - km) / (ch.k + km);
}

// pole-cleared dispersion target for the quasistatic TM family:
//   H(w) = (2q - wp^2)^2 - wp^4 e^{-2kL},   entire in w,
// with the same zeros as G = 1 - r^2 e^{-2kL}
cplx tm_entire(const DrudeLorentz& m, Channel ch, double L, cplx w) {
    const cplx q = w * (w + cplx(0.0, m.gamma)) - m.omega_0 * m.omega_0;
    const cplx u = 2.0 * q - m.omega_p * m.omega_p;
    const double wp2 = m.omega_p * m.omega_p;
    return u * u - wp2 * wp2 * std::exp(-2.0 * ch.k * L);
}

void sort_set(ResonanceSet& s) {
    std::sort(s.complex_pairs.begin(), s.complex_pairs.end(),
              [](cplx a, cplx b) {
                  return a.real() != b.real() ? a.real() < b.real()
                                              : a.imag() < b.imag();
              });
    std::sort(s.imaginary_modes.begin(), s.imaginary_modes.end());
}

double shift_under_gap_change(const PlanarCavity& cavity, Channel ch,
                              const ResonanceOptions& opt, cplx w) {
    const DrudeLorentz& m = drude_of(cavity);
    PlanarCavity c2 = cavity;
    c2.gap = cavity.gap * (1.0 + 1e-4);
    auto h2 = [&](cplx z) {
        if (ch.pol == Polarization::TM && opt.quasistatic)
            return tm_entire(m, ch, c2.gap, z);
        const cplx r = opt.quasistatic
                           ? r_quasistatic(m, ch, z)
                           : reflection_rho(c2, ch, z, true);
        const cplx kap = opt.quasistatic ? cplx(ch.k) : kappa(ch.k, z);
        return 1.0 - r * r * std::exp(-2.0 * kap * c2.gap);
    };
    try {
        const cplx w2 = numerics::newton_polish(h2, w, opt.tol);
        return std::abs(w2 - w) * 1e4;  // |dw/dL| * L
    } catch (const NonConvergence&) {
        return 1e300;  // moved out of reach: certainly L-dependent
    }
}

} // namespace

ResonanceSet find_resonances(const PlanarCavity& cavity, Channel ch,
                             const numerics::Rectangle& region,
                             const ResonanceOptions& opt) {
    if (region.re_min < -1e-12 || region.im_max > 1e-12)
        throw DomainError(
            "find_resonances: region must sit in the closed fourth quadrant");
    if (cavity.slab_thickness)
        throw DomainError("find_resonances: bulk mirrors only");
    const DrudeLorentz& m = drude_of(cavity);
    const double L = cavity.gap;

    ResonanceSet set;
    set.channel = ch;
    set.gap = L;
    set.region = region;
    set.continuation_used = true;  // the search lives below the real axis

    // search the open quadrant for crossing-symmetric pairs; the
    // imaginary axis itself is handled by a 1-D scan below
    const double re_lo = std::max(region.re_min, 0.0) + 1e-9 * region.diag();
    numerics::Rectangle quad{re_lo, region.re_max, region.im_min,
                             std::min(region.im_max, -1e-9 * region.diag())};
    std::vector<cplx> roots;
    if (quad.re_max > quad.re_min && quad.im_max > quad.im_min) {
        if (ch.pol == Polarization::TM && opt.quasistatic) {
            auto h = [&](cplx z) { return tm_entire(m, ch, L, z); };
            roots = numerics::find_complex_roots(h, quad, opt.tol);
        } else {
            // experimental: the continuation may cross a branch cut of
            // kappa_m (or kappa in the retarded case)
            auto h = [&](cplx z) {
                const cplx r = opt.quasistatic
                                   ? r_quasistatic(m, ch, z)
                                   : reflection_rho(cavity, ch, z, true);
                const cplx kap =
                    opt.quasistatic ? cplx(ch.k) : kappa(ch.k, z);
                return 1.0 - r * r * std::exp(-2.0 * kap * L);
            };
            roots = numerics::find_complex_roots(h, quad, opt.tol);
        }
    }

    // eddy branch: zeros on the negative imaginary axis, where the
    // quasistatic functions are real
    {
        auto g = [&](double y) {
            const cplx w(0.0, -y);
            if (ch.pol == Polarization::TM && opt.quasistatic)
                return tm_entire(m, ch, L, w).real();
            const cplx r = opt.quasistatic
                               ? r_quasistatic(m, ch, w)
                               : reflection_rho(cavity, ch, w, true);
            const cplx kap = opt.quasistatic ? cplx(ch.k) : kappa(ch.k, w);
            return (1.0 - r * r * std::exp(-2.0 * kap * L)).real();
        };
        const double y_max = -region.im_min;
        // stay off the eps pole of the continued permittivity at y = gamma
        std::vector<double> ys;
        const double y_lo = 1e-7 * y_max;
        if (m.gamma > y_lo && m.gamma < y_max) {
            for (double y :
                 numerics::find_real_roots(g, y_lo, m.gamma * (1 - 1e-9), 400))
                ys.push_back(y);
            for (double y : numerics::find_real_roots(
                     g, m.gamma * (1 + 1e-9), y_max, 400))
                ys.push_back(y);
        } else {
            for (double y : numerics::find_real_roots(g, y_lo, y_max, 800))
                ys.push_back(y);
        }
        for (double y : ys) set.imaginary_modes.push_back(y);
    }

    for (const cplx& w : roots) {
        if (std::fabs(w.real()) < 1e3 * opt.tol) {
            set.imaginary_modes.push_back(-w.imag());
            continue;
        }
        if (shift_under_gap_change(cavity, ch, opt, w) <
            opt.l_independence_threshold * std::abs(w))
            continue;  // single-interface feature, excluded by [.]_inf^L
        set.complex_pairs.push_back(w);
    }
    // drop duplicated eddy entries from the 1-D and 2-D passes
    std::sort(set.imaginary_modes.begin(), set.imaginary_modes.end());
    set.imaginary_modes.erase(
        std::unique(set.imaginary_modes.begin(), set.imaginary_modes.end(),
                    [&](double a, double b) {
                        return std::fabs(a - b) < 100.0 * opt.tol;
                    }),
        set.imaginary_modes.end());
    sort_set(set);
    return set;
}

ResonanceSet reference_resonances(const PlanarCavity& cavity, Channel ch,
                                  const numerics::Rectangle& region,
                                  const ResonanceOptions& opt) {
    const DrudeLorentz& m = drude_of(cavity);
    ResonanceSet set;
    set.channel = ch;
    set.gap = 0.0;
    set.region = region;

    if (!(ch.pol == Polarization::TM && opt.quasistatic))
        throw DomainError(
            "reference_resonances: analytic reference exists for the "
            "quasistatic TM family only");

    // zeros of (eps+1)^2: w(w + i gamma) = w0^2 + wp^2/2, double
    const double s2 =
        m.omega_0 * m.omega_0 + 0.5 * m.omega_p * m.omega_p -
        0.25 * m.gamma * m.gamma;
    if (s2 > 0.0) {
        const cplx w(std::sqrt(s2), -0.5 * m.gamma);
        set.complex_pairs.assign(2, w);
    } else {
        const double root = std::sqrt(-s2);
        set.imaginary_modes.assign(2, 0.5 * m.gamma - root);
        set.imaginary_modes.push_back(0.5 * m.gamma + root);
        set.imaginary_modes.push_back(0.5 * m.gamma + root);
        // both eddy partners, each doubled
        std::sort(set.imaginary_modes.begin(), set.imaginary_modes.end());
    }
    return set;
}

namespace {

// (1/2) Re sum' [ w - (2i/pi) w ln(w/Lambda) ] over one set
double half_weighted_sum(const ResonanceSet& s, double Lambda) {
    double total = 0.0;
    for (const cplx& w : s.complex_pairs) {
        const cplx f = w - cplx(0.0, 2.0 / M_PI) * w * std::log(w / Lambda);
        total += f.real();
    }
    for (double xi : s.imaginary_modes) {
        // w = -i xi: Re f collapses to -(2 xi/pi) ln(xi/Lambda), weight 1/2
        total += 0.5 * (-2.0 * xi / M_PI * std::log(xi / Lambda));
    }
    return 0.5 * total;
}

double im_sum(const ResonanceSet& s) {
    double im = 0.0;
    for (const cplx& w : s.complex_pairs) im += w.imag();
    for (double xi : s.imaginary_modes) im += 0.5 * (-xi);
    return im;
}

double abs_sum(const ResonanceSet& s) {
    double a = 0.0;
    for (const cplx& w : s.complex_pairs) a += std::abs(w);
    for (double xi : s.imaginary_modes) a += 0.5 * xi;
    return a;
}

} // namespace

double generalized_mode_sum(const ResonanceSet& set_L,
                            const ResonanceSet& set_ref, double Lambda,
                            GeneralizedSumDetails* details,
                            double sum_rule_rel_tol) {
    if (!(Lambda > 0.0))
        throw DomainError("generalized_mode_sum: Lambda > 0 required");
    if (set_L.channel.pol != set_ref.channel.pol ||
        set_L.channel.k != set_ref.channel.k)
        throw DomainError("generalized_mode_sum: sets from different channels");

    GeneralizedSumDetails d;
    d.sum_rule_residual = std::fabs(im_sum(set_L) - im_sum(set_ref));
    d.sum_rule_scale = abs_sum(set_L) + abs_sum(set_ref);
    if (d.sum_rule_residual > sum_rule_rel_tol * std::max(1e-300, d.sum_rule_scale))
        throw SumRuleViolation(
            "generalized_mode_sum: Im sum'[w] does not cancel between the "
            "configurations (missed resonances?); residual " +
            std::to_string(d.sum_rule_residual));

    const double e1 =
        half_weighted_sum(set_L, Lambda) - half_weighted_sum(set_ref, Lambda);
    const double e2 = half_weighted_sum(set_L, 10.0 * Lambda) -
                      half_weighted_sum(set_ref, 10.0 * Lambda);
    d.lambda_drift = std::fabs(e1 - e2);
    if (details) *details = d;
    return e1;
}

double quasistatic_channel_lifshitz(const PlanarCavity& cavity, Channel ch,
                                    double tol) {
    const DrudeLorentz& m = drude_of(cavity);
    const double L = cavity.gap;
    auto f = [&](double xi) {
        if (ch.k * L > 400.0) return 0.0;
        const cplx r = r_quasistatic(m, ch, cplx(0.0, xi));
        const double rr = r.real() * r.real() + r.imag() * r.imag();
        return std::log1p(-rr * std::exp(-2.0 * ch.k * L)) / (2.0 * M_PI);
    };
    numerics::QuadOptions qo;
    qo.tol = tol;
    const double scale = std::max(m.omega_p, m.omega_0 + m.gamma);
    return numerics::integrate_semi_infinite_from(f, 0.0, scale, qo).value;
}

} // namespace modesum::modes
