#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "modesum/errors.hpp"

namespace modesum::numerics {

// Brent's method on a bracketing interval [a,b] with f(a)*f(b) <= 0.
template <typename F>
double brent(F&& f, double a, double b, double fa, double fb,
             double xtol = 0.0, int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw DomainError("brent: no sign change");

    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = e = b - a; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1.11e-16 * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {           // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {                // inverse quadratic
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q),
                                   std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

// Scan [a,b] on a uniform grid and polish every sign change.  Roots
// separated by less than (b-a)/scan_points will be missed; callers with
// dense spectra must raise scan_points.
template <typename F>
std::vector<double> find_real_roots(F&& g, double a, double b, int scan_points) {
    std::vector<double> roots;
    if (scan_points < 2) throw DomainError("find_real_roots: scan_points >= 2");
    const double h = (b - a) / scan_points;
    double x0 = a, f0 = g(x0);
    for (int i = 1; i <= scan_points; ++i) {
        const double x1 = (i == scan_points) ? b : a + i * h;
        const double f1 = g(x1);
        if (f0 == 0.0)
            roots.push_back(x0);
        else if ((f0 > 0) != (f1 > 0) && std::isfinite(f0) && std::isfinite(f1))
            roots.push_back(brent(g, x0, x1, f0, f1));
        x0 = x1;
        f0 = f1;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [h](double p, double q) { return q - p < 1e-12 * h; }),
                roots.end());
    return roots;
}

struct Rectangle {
    double re_min, re_max, im_min, im_max;

    double diag() const {
        return std::hypot(re_max - re_min, im_max - im_min);
    }
    std::complex<double> center() const {
        return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)};
    }
    Rectangle dilated(double margin) const {
        return {re_min - margin, re_max + margin, im_min - margin, im_max + margin};
    }
};

namespace detail {

// Winding number of h along the rectangle boundary, by adaptive phase
// tracking: segments are refined until each phase step is < pi/2, which
// pins the branch of the argument for analytic h with no boundary zero.
template <typename F>
struct WindingWalker {
    F& h;
    double min_abs = 1e300;
    double sum_abs = 0.0;
    long n_samples = 0;
    long max_evals = 2'000'000;

    std::complex<double> eval(std::complex<double> z) {
        auto v = h(z);
        const double m = std::abs(v);
        min_abs = std::min(min_abs, m);
        sum_abs += m;
        ++n_samples;
        if (n_samples > max_evals)
            throw NonConvergence("count_zeros: boundary refinement exploded");
        return v;
    }

    // phase increment along the straight segment z0 -> z1
    double walk(std::complex<double> z0, std::complex<double> h0,
                std::complex<double> z1, std::complex<double> h1, int depth) {
        const double d = std::arg(h1 / h0);  // in (-pi, pi]
        if (std::fabs(d) < 1.3 && depth > 0) return d;
        if (depth > 44)
            throw BoundaryZero("count_zeros: phase step will not resolve");
        const std::complex<double> zm = 0.5 * (z0 + z1);
        const std::complex<double> hm = eval(zm);
        return walk(z0, h0, zm, hm, depth + 1) + walk(zm, hm, z1, h1, depth + 1);
    }
};

} // namespace detail

// Number of zeros (minus poles, counted with multiplicity) of h inside
// the rectangle, via the argument principle.  Throws BoundaryZero when a
// zero sits (numerically) on the contour.
template <typename F>
int count_zeros(F&& h, const Rectangle& r, int samples_per_side = 32,
                bool retried = false) {
    detail::WindingWalker<F> w{h};
    std::vector<std::complex<double>> corners = {
        {r.re_min, r.im_min}, {r.re_max, r.im_min},
        {r.re_max, r.im_max}, {r.re_min, r.im_max}};
    double total = 0.0;
    try {
        std::complex<double> zprev = corners[0];
        std::complex<double> hprev = w.eval(zprev);
        const std::complex<double> zfirst = zprev;
        const std::complex<double> hfirst = hprev;
        for (int side = 0; side < 4; ++side) {
            const std::complex<double> za = corners[side];
            const std::complex<double> zb = corners[(side + 1) % 4];
            for (int i = 1; i <= samples_per_side; ++i) {
                std::complex<double> z =
                    za + (zb - za) * (static_cast<double>(i) / samples_per_side);
                std::complex<double> hz =
                    (side == 3 && i == samples_per_side) ? hfirst : w.eval(z);
                if (side == 3 && i == samples_per_side) z = zfirst;
                total += w.walk(zprev, hprev, z, hz, 0);
                zprev = z;
                hprev = hz;
            }
        }
        const double mean = w.sum_abs / std::max<long>(1, w.n_samples);
        if (w.min_abs < 1e-11 * mean)
            throw BoundaryZero("count_zeros: |h| nearly vanishes on contour");
    } catch (const BoundaryZero&) {
        if (retried) throw;
        // zeros exactly on round user boundaries are artifacts; nudge once
        return count_zeros(h, r.dilated(1e-6 * r.diag()), samples_per_side, true);
    }
    const double winding = total / (2.0 * M_PI);
    const long n = std::lround(winding);
    if (std::fabs(winding - static_cast<double>(n)) > 0.2)
        throw NonConvergence("count_zeros: non-integer winding number");
    return static_cast<int>(n);
}

// Newton polish with a central-difference derivative.
template <typename F>
std::complex<double> newton_polish(F&& h, std::complex<double> z, double tol,
                                   int max_iter = 60) {
    for (int it = 0; it < max_iter; ++it) {
        const double step = std::max(1e-7, 1e-7 * std::abs(z));
        const std::complex<double> d =
            (h(z + step) - h(z - step)) / (2.0 * step);
        if (d == std::complex<double>(0.0))
            throw NonConvergence("newton: vanishing derivative");
        const std::complex<double> dz = h(z) / d;
        z -= dz;
        if (std::abs(dz) < 0.25 * tol) return z;
    }
    throw NonConvergence("newton: no convergence");
}

namespace detail {

template <typename F>
void subdivide_roots(F& h, const Rectangle& r, double tol,
                     std::vector<std::complex<double>>& out, int depth) {
    int n;
    try {
        n = count_zeros(h, r, 16);
    } catch (const BoundaryZero&) {
        if (depth == 0) throw;
        // boundary hit deep in the recursion: shift the cut slightly
        n = count_zeros(h, r.dilated(3.1e-5 * r.diag()), 16);
    }
    if (n == 0) return;
    if (n < 0)
        throw DomainError("find_complex_roots: pole inside search region");
    if ((n == 1 && r.diag() < 1e4 * tol) || r.diag() < 16.0 * tol || depth > 40) {
        for (int i = 0; i < n; ++i) {
            // seeds spread over the cell; duplicates are merged later
            const double fr = (n == 1) ? 0.5 : (i + 0.5) / n;
            std::complex<double> seed(
                r.re_min + fr * (r.re_max - r.re_min),
                r.im_min + (0.5 + 0.2 * ((i % 2) ? 1 : -1) * (n > 1)) *
                               (r.im_max - r.im_min));
            out.push_back(newton_polish(h, seed, tol));
        }
        return;
    }
    const double rm = 0.5 * (r.re_min + r.re_max);
    const double im = 0.5 * (r.im_min + r.im_max);
    subdivide_roots(h, Rectangle{r.re_min, rm, r.im_min, im}, tol, out, depth + 1);
    subdivide_roots(h, Rectangle{rm, r.re_max, r.im_min, im}, tol, out, depth + 1);
    subdivide_roots(h, Rectangle{r.re_min, rm, im, r.im_max}, tol, out, depth + 1);
    subdivide_roots(h, Rectangle{rm, r.re_max, im, r.im_max}, tol, out, depth + 1);
}

} // namespace detail

// All zeros of an analytic h inside the rectangle, located by recursive
// quadrisection (argument-principle counts) plus Newton polish.  Assumes
// simple zeros; roots closer than 10*tol are merged.
template <typename F>
std::vector<std::complex<double>> find_complex_roots(F&& h, const Rectangle& r,
                                                     double tol) {
    const int expected = count_zeros(h, r, 32);
    std::vector<std::complex<double>> roots;
    if (expected == 0) return roots;
    if (expected < 0)
        throw DomainError("find_complex_roots: pole inside search region");
    detail::subdivide_roots(h, r, tol, roots, 0);

    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<std::complex<double>> unique;
    for (const auto& z : roots) {
        if (unique.empty() || std::abs(z - unique.back()) > 10.0 * tol)
            unique.push_back(z);
    }
    if (static_cast<int>(unique.size()) != expected)
        throw CountMismatch("find_complex_roots: located " +
                            std::to_string(unique.size()) + " roots, winding says " +
                            std::to_string(expected));
    return unique;
}

} // namespace modesum::numerics
