#include "modesum/modes/identity.hpp"

#include <cmath>

#include "modesum/numerics/quadrature.hpp"

namespace modesum::modes {

namespace {

cplx f_eval(IdentityFunction kind, double s, cplx w) {
    const cplx den = s * s + w * w;
    if (kind == IdentityFunction::linear_rational_cutoff)
        return w * s * s / den;
    return s * s * s / den;
}

// Re P[ 2 i w0 / (xi^2 + w0^2) ]; plain value for Re w0 > 0, principal
// kernel 2 xi0/(xi^2 - xi0^2) when w0 = -i xi0
double kernel_K(cplx w0, double xi) {
    const cplx v = 2.0 * cplx(0.0, 1.0) * w0 / (xi * xi + w0 * w0);
    return v.real();
}

// PV of int_lo^hi  g(xi)/(xi - pole) dxi  by symmetric folding
template <typename G>
double fold_pv(G&& g, double pole, double lo, double hi, double tol) {
    const double w = 0.9 * std::min(pole - lo, hi - pole);
    numerics::QuadOptions qo;
    qo.tol = tol;
    double total = 0.0;
    auto sym = [&](double u) { return (g(pole + u) - g(pole - u)) / u; };
    total += numerics::integrate_finite(sym, 1e-13 * pole, w, qo).value;
    auto plain = [&](double xi) { return g(xi) / (xi - pole); };
    if (lo < pole - w)
        total += numerics::integrate_finite(plain, lo, pole - w, qo).value;
    if (hi > pole + w)
        total += numerics::integrate_finite(plain, pole + w, hi, qo).value;
    return total;
}

// rhs integral of the linear family: the density s^2 xi/(s^2 - xi^2)
// times the kernel, principal value at xi = s (and at xi0 when the pole
// pair sits on the imaginary axis)
double rhs_integral_linear(cplx w0, double s, double tol) {
    const bool on_axis = w0.real() == 0.0;
    const double xi0 = -w0.imag();
    numerics::QuadOptions qo;
    qo.tol = tol;

    // split so each piece contains at most one principal-value point
    const double mid = on_axis ? 0.5 * (xi0 + s) : 0.5 * s;
    double total = 0.0;

    if (on_axis && xi0 > 0.0) {
        // P at xi0 inside [0, mid]: kernel pole, density regular
        auto g = [&](double xi) {
            const double density = s * s * xi / ((s - xi) * (s + xi));
            return density * 2.0 * xi0 / (xi + xi0);
        };
        total += fold_pv(g, xi0, 0.0, mid, tol);
    } else {
        auto plain = [&](double xi) {
            const double density = s * s * xi / ((s - xi) * (s + xi));
            return density * kernel_K(w0, xi);
        };
        total += numerics::integrate_finite(plain, 0.0, mid, qo).value;
    }

    // P at s inside [mid, 2s]: density pole, kernel regular there
    {
        auto g = [&](double xi) {
            return -s * s * xi / (xi + s) * kernel_K(w0, xi);
        };
        total += fold_pv(g, s, mid, 2.0 * s, tol);
    }

    // regular tail beyond 2s: density ~ -s^2/xi, kernel ~ 1/xi^2
    {
        auto plain = [&](double xi) {
            const double density = s * s * xi / ((s - xi) * (s + xi));
            return density * kernel_K(w0, xi);
        };
        total += numerics::integrate_semi_infinite_from(plain, 2.0 * s, s, qo)
                     .value;
    }
    return total;
}

} // namespace

IdentityResult identity_check(const IdentityCase& c) {
    const cplx w0 = c.omega0;
    if (w0.real() < 0.0 || w0.imag() > 0.0)
        throw DomainError("identity_check: omega0 in the closed fourth quadrant");
    const double s = c.cutoff_scale > 0.0 ? c.cutoff_scale : 10.0 * std::abs(w0);
    if (!(s > 0.0)) throw DomainError("identity_check: cutoff scale is zero");

    IdentityResult out;

    // left side
    if (w0.imag() == 0.0) {
        // the pole pair collapses onto the integration ray: the Poisson
        // kernels become delta functions and the integral is f(w0)
        out.lhs = f_eval(c.f, s, w0).real();
    } else {
        const double a = w0.real(), b = -w0.imag();
        auto f = [&](double w) {
            const double p1 = b / ((w - a) * (w - a) + b * b);
            const double p2 = b / ((w + a) * (w + a) + b * b);
            return f_eval(c.f, s, w).real() * (p1 + p2) / M_PI;
        };
        numerics::QuadOptions qo;
        qo.tol = c.tol;
        for (double m : {1.0, 3.0, 10.0}) {
            if (a - m * b > 0) qo.split_points.push_back(a - m * b);
            qo.split_points.push_back(a + m * b);
        }
        out.lhs = numerics::integrate_semi_infinite_from(
                      f, 0.0, std::max(s, a + 10.0 * b), qo)
                      .value;
    }

    // right side
    out.rhs = f_eval(c.f, s, w0).real();
    if (c.f == IdentityFunction::even_rational) {
        // Im f(i xi + 0+) = -(pi s^2/2) delta(xi - s)
        out.rhs += (1.0 / M_PI) * (-M_PI * s * s / 2.0) * kernel_K(w0, s);
    } else {
        out.rhs += (1.0 / M_PI) * rhs_integral_linear(w0, s, c.tol);
    }

    out.gap = std::fabs(out.lhs - out.rhs);
    return out;
}

std::vector<IdentityCase> make_identity_sweep(int n, unsigned long seed) {
    // xorshift-style generator: identical sweeps across platforms
    unsigned long long x = seed * 2685821657736338717ULL + 1442695040888963407ULL;
    auto uni = [&x](double lo, double hi) {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return lo + (hi - lo) * ((x >> 11) * 0x1.0p-53);
    };
    std::vector<IdentityCase> cases;
    cases.reserve(n);
    for (int i = 0; i < n; ++i) {
        IdentityCase c;
        c.f = (i % 2 == 0) ? IdentityFunction::linear_rational_cutoff
                           : IdentityFunction::even_rational;
        const int kind = i % 5;
        if (kind == 3) {
            c.omega0 = cplx(0.0, -uni(0.1, 2.0));  // principal-value branch
        } else if (kind == 4) {
            c.omega0 = cplx(uni(0.1, 3.0), 0.0);   // real reduction
        } else {
            c.omega0 = cplx(uni(0.05, 3.0), -uni(0.02, 2.0));
        }
        cases.push_back(c);
    }
    return cases;
}

} // namespace modesum::modes
