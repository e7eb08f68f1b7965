#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "modesum/errors.hpp"

namespace modesum::numerics {

template <typename T>
struct QuadResult {
    T value{};
    double abs_error = 0.0;
    long evaluations = 0;
};

struct QuadOptions {
    double tol = 1e-10;       // relative to max(1,|I|) unless absolute
    bool absolute = false;
    int max_depth = 48;
    long max_evaluations = 80'000'000;
    // interior points the integrand is known to be rough at (kinks,
    // near-singular peaks); the adaptive pass starts from these cells
    std::vector<double> split_points{};
};

namespace detail {

// Gauss 7 / Kronrod 15 pair (QUADPACK dqk15 abscissae and weights).
inline constexpr std::array<double, 8> gk_x = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk_wk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gk_wg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

inline double vmag(double x) { return std::fabs(x); }
inline double vmag(const std::complex<double>& z) { return std::abs(z); }

template <typename F>
using value_t = decltype(std::declval<F&>()(0.0));

// One Gauss-Kronrod 15 panel; returns Kronrod value, sets err = |K15-G7|.
template <typename F>
value_t<F> gk15(F& f, double a, double b, double& err, double& resabs) {
    using T = value_t<F>;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    T fc = f(c);
    T k15 = gk_wk[7] * fc;
    T g7 = gk_wg[3] * fc;
    resabs = gk_wk[7] * vmag(fc);
    for (int i = 0; i < 7; ++i) {
        T lo = f(c - h * gk_x[i]);
        T hi = f(c + h * gk_x[i]);
        k15 += gk_wk[i] * (lo + hi);
        resabs += gk_wk[i] * (vmag(lo) + vmag(hi));
        if (i % 2 == 1) g7 += gk_wg[i / 2] * (lo + hi);
    }
    k15 *= h;
    g7 *= h;
    resabs *= h;
    err = vmag(k15 - g7);
    return k15;
}

// Globally controlled adaptive bisection: the segment with the largest
// local error estimate is refined until the summed estimate meets the
// target.  The final reduction runs over segments sorted by position, so
// results are reproducible for identical inputs.
template <typename F>
QuadResult<value_t<F>> integrate_cells(F& f, const std::vector<double>& edges,
                                       const QuadOptions& opt) {
    using T = value_t<F>;
    struct Seg {
        double a, b, err;
        T val;
        int depth;
        bool frozen;  // width or depth floor reached
    };

    QuadResult<T> out;
    std::vector<Seg> segs;
    double resabs_total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double err, resabs;
        T v = gk15(f, edges[i], edges[i + 1], err, resabs);
        out.evaluations += 15;
        resabs_total += resabs;
        segs.push_back({edges[i], edges[i + 1], err, v, 0, false});
    }
    const double tol_abs =
        opt.absolute ? opt.tol : opt.tol * std::max(1.0, resabs_total);

    auto key = [](double err) { return std::isfinite(err) ? err : 1e300; };

    // worst-first refinement driven by a max-heap of (error, segment index);
    // stale heap entries are skipped by comparing against the stored error
    std::vector<std::pair<double, size_t>> heap;
    auto cmp = [](const auto& p, const auto& q) { return p < q; };
    double live_err = 0.0;
    double frozen_err = 0.0;
    for (size_t i = 0; i < segs.size(); ++i) {
        live_err += key(segs[i].err);
        heap.emplace_back(key(segs[i].err), i);
    }
    std::make_heap(heap.begin(), heap.end(), cmp);

    while (live_err + frozen_err > tol_abs) {
        size_t worst = segs.size();
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), cmp);
            auto [e, i] = heap.back();
            heap.pop_back();
            if (!segs[i].frozen && e == key(segs[i].err)) { worst = i; break; }
        }
        if (worst == segs.size()) {
            // everything frozen and still above target
            if (live_err + frozen_err > 64.0 * tol_abs)
                throw NonConvergence("quadrature: interval refinement stalled");
            break;
        }
        Seg s = segs[worst];
        const double m = 0.5 * (s.a + s.b);
        const bool floor =
            s.depth >= opt.max_depth ||
            (s.b - s.a) < 1e-15 * (std::fabs(s.a) + std::fabs(s.b)) + 5e-308;
        if (floor) {
            segs[worst].frozen = true;
            live_err -= key(s.err);
            frozen_err += key(s.err);
            continue;
        }
        double e1, e2, r1, r2;
        T v1 = gk15(f, s.a, m, e1, r1);
        T v2 = gk15(f, m, s.b, e2, r2);
        out.evaluations += 30;
        if (out.evaluations > opt.max_evaluations)
            throw NonConvergence("quadrature: evaluation budget exhausted");
        live_err += key(e1) + key(e2) - key(s.err);
        segs[worst] = {s.a, m, e1, v1, s.depth + 1, false};
        segs.push_back({m, s.b, e2, v2, s.depth + 1, false});
        heap.emplace_back(key(e1), worst);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.emplace_back(key(e2), segs.size() - 1);
        std::push_heap(heap.begin(), heap.end(), cmp);
    }

    std::sort(segs.begin(), segs.end(),
              [](const Seg& p, const Seg& q) { return p.a < q.a; });
    for (const auto& s : segs) {
        out.value += s.val;
        out.abs_error += s.err;
    }
    return out;
}

} // namespace detail

// Integral over a finite interval [a, b].
template <typename F>
auto integrate_finite(F&& f, double a, double b, QuadOptions opt = {}) {
    std::vector<double> edges{a};
    for (double s : opt.split_points)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    return detail::integrate_cells(f, edges, opt);
}

// Integral over [a, inf); the decaying tail is mapped by
// x = a + scale*t/(1-t).  `scale` should be of the order of the decay
// length of f so the mapped integrand is well resolved.
template <typename F>
auto integrate_semi_infinite_from(F&& f, double a, double scale,
                                  QuadOptions opt = {}) {
    auto g = [&f, a, scale](double t) {
        const double u = 1.0 - t;
        const double x = a + scale * t / u;
        return f(x) * (scale / (u * u));
    };
    std::vector<double> edges{0.0};
    for (double s : opt.split_points)
        if (s > a) edges.push_back((s - a) / (s - a + scale));
    edges.push_back(1.0);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return detail::integrate_cells(g, edges, opt);
}

template <typename F>
auto integrate_semi_infinite(F&& f, double tol = 1e-10, double scale = 1.0) {
    QuadOptions opt;
    opt.tol = tol;
    return integrate_semi_infinite_from(std::forward<F>(f), 0.0, scale, opt);
}

// Principal value of  int_0^upper f(xi) * 2*xi0/(xi^2 - xi0^2) dxi.
// The caller supplies f without the pole factor; upper = inf is allowed
// (pass std::numeric_limits<double>::infinity()).
//
// The simple pole at xi0 is handled by folding a symmetric window
// [xi0-w, xi0+w] onto [0,w], where the difference quotient is smooth;
// the remaining pieces are regular integrals.
template <typename F>
auto integrate_principal_value(F&& f, double xi0, double upper,
                               QuadOptions opt = {}) {
    using T = detail::value_t<F>;
    if (!(xi0 > 0.0)) throw DomainError("principal value: pole must be > 0");
    const bool infinite = std::isinf(upper);
    if (!infinite && upper <= xi0)
        throw DomainError("principal value: pole outside integration range");

    // phi(xi)/(xi - xi0) with phi smooth at xi0
    auto phi = [&f, xi0](double xi) { return f(xi) * (2.0 * xi0 / (xi + xi0)); };
    const double room = infinite ? xi0 : std::min(xi0, upper - xi0);
    const double w = 0.5 * room;

    QuadResult<T> total;
    // folded window
    {
        auto g = [&phi, xi0](double u) {
            return (phi(xi0 + u) - phi(xi0 - u)) / u;
        };
        auto r = integrate_finite(g, 1e-14 * xi0, w, opt);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
    }
    auto kernel = [&f, xi0](double xi) {
        return f(xi) * (2.0 * xi0 / ((xi - xi0) * (xi + xi0)));
    };
    if (xi0 - w > 0.0) {
        auto r = integrate_finite(kernel, 0.0, xi0 - w, opt);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
    }
    if (infinite) {
        auto r = integrate_semi_infinite_from(kernel, xi0 + w,
                                              std::max(1.0, xi0), opt);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
    } else if (upper > xi0 + w) {
        auto r = integrate_finite(kernel, xi0 + w, upper, opt);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
    }
    return total;
}

struct MatsubaraMeta {
    long terms = 0;
    double tail_bound = 0.0;
};

// term(0)/2 + sum_{l>=1} term(l), truncated when a geometric bound on the
// remainder falls below tol relative to the partial sum.
template <typename F>
double matsubara_sum(F&& term, double tol = 1e-12,
                     MatsubaraMeta* meta = nullptr, long max_terms = 20'000'000) {
    double sum = 0.5 * term(0);
    double prev = 0.0;
    long l = 1;
    int quiet = 0;
    for (; l <= max_terms; ++l) {
        const double t = term(l);
        sum += t;
        const double at = std::fabs(t);
        double tail = at;
        if (l > 1 && at < std::fabs(prev)) {
            const double r = at / std::fabs(prev);
            tail = at * r / (1.0 - r);
        }
        prev = t;
        if (tail <= tol * std::max(1e-300, std::fabs(sum)))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 3) {
            if (meta) { meta->terms = l; meta->tail_bound = tail; }
            return sum;
        }
    }
    throw NonConvergence("matsubara_sum: terms fail to decay within budget");
}

} // namespace modesum::numerics
