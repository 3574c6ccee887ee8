// SPDX-License-Identifier: Apache-2.0
//
// Deterministic adaptive quadrature built on the 15-point Gauss-Kronrod
// rule with greedy bisection of the worst interval. All node sequences and
// reductions are fixed-order, so identical inputs give identical results.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace thzcov {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

template <std::size_t K>
struct QuadResultVec {
    std::array<double, K> value{};
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> gk15_weights_kronrod = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr std::array<double, 4> gk15_weights_gauss = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <std::size_t K>
struct Segment {
    double a = 0.0;
    double b = 0.0;
    std::array<double, K> value{};
    double error = 0.0;
};

// One GK15 evaluation of a vector-valued integrand on [a, b]. The error is
// the summed per-component |Kronrod - Gauss| difference and is conservative
// for any linear combination of components.
template <std::size_t K, class F>
Segment<K> gk15_apply(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, K> kronrod{};
    std::array<double, K> gauss{};

    for (std::size_t i = 0; i < gk15_nodes.size(); ++i) {
        const double offset = half * gk15_nodes[i];
        std::array<double, K> fsum{};
        if (i == 7) {
            fsum = f(center);
        } else {
            const std::array<double, K> lo = f(center - offset);
            const std::array<double, K> hi = f(center + offset);
            for (std::size_t k = 0; k < K; ++k) fsum[k] = lo[k] + hi[k];
        }
        for (std::size_t k = 0; k < K; ++k) kronrod[k] += gk15_weights_kronrod[i] * fsum[k];
        if (i % 2 == 1 || i == 7) {
            const double wg = gk15_weights_gauss[i / 2];
            for (std::size_t k = 0; k < K; ++k) gauss[k] += wg * fsum[k];
        }
    }

    Segment<K> seg;
    seg.a = a;
    seg.b = b;
    double err = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        seg.value[k] = kronrod[k] * half;
        err += std::abs((kronrod[k] - gauss[k]) * half);
    }
    seg.error = err;
    return seg;
}

}  // namespace detail

/// Adaptive integration of a vector-valued integrand over [a, b]. The
/// convergence target is the absolute error of the component sum, which is
/// what the coverage integrals control. Never throws: a blown evaluation
/// budget is reported through converged = false.
template <std::size_t K, class F>
QuadResultVec<K> integrate_1d_vec(F&& f, double a, double b, double tol_abs,
                                  long max_evals = 1000000) {
    QuadResultVec<K> out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::vector<detail::Segment<K>> segments;
    segments.push_back(detail::gk15_apply<K>(f, a, b));
    long evals = 15;

    auto total_error = [&] {
        double e = 0.0;
        for (const auto& s : segments) e += s.error;
        return e;
    };

    const double min_width = (b - a) * 1e-14;
    while (total_error() > tol_abs && evals + 30 <= max_evals) {
        // split the interval with the largest error estimate; ties broken by
        // the left endpoint so the refinement order is deterministic
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segments.size(); ++i) {
            if (segments[i].error > segments[worst].error ||
                (segments[i].error == segments[worst].error &&
                 segments[i].a < segments[worst].a)) {
                worst = i;
            }
        }
        const auto seg = segments[worst];
        if (seg.b - seg.a <= min_width) break;  // local roundoff floor
        const double mid = 0.5 * (seg.a + seg.b);
        segments[worst] = detail::gk15_apply<K>(f, seg.a, mid);
        segments.push_back(detail::gk15_apply<K>(f, mid, seg.b));
        evals += 30;
    }

    // fixed left-to-right reduction, independent of the refinement order
    std::sort(segments.begin(), segments.end(),
              [](const auto& x, const auto& y) { return x.a < y.a; });
    for (const auto& s : segments) {
        for (std::size_t k = 0; k < K; ++k) out.value[k] += s.value[k];
        out.error_estimate += s.error;
    }
    out.evaluations = evals;
    out.converged = out.error_estimate <= tol_abs;
    return out;
}

/// Scalar adaptive integration over [a, b] to an absolute tolerance.
template <class F>
QuadResult integrate_1d(F&& f, double a, double b, double tol_abs, long max_evals = 1000000) {
    auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
    const auto v = integrate_1d_vec<1>(wrapped, a, b, tol_abs, max_evals);
    return QuadResult{v.value[0], v.error_estimate, v.evaluations, v.converged};
}

/// Iterated adaptive integration over the rectangle [ax, bx] x [ay, by]:
/// the outer (y) rule integrates inner x-integrals. The inner tolerance is
/// apportioned so the accumulated inner error stays within tol_abs.
template <class F>
QuadResult integrate_2d(F&& f, double ax, double bx, double ay, double by, double tol_abs,
                        long max_evals = 1000000) {
    if (ay == by || ax == bx) {
        return QuadResult{0.0, 0.0, 0, true};
    }
    const double tol_outer = 0.5 * tol_abs;
    const double tol_inner = 0.5 * tol_abs / std::abs(by - ay);

    long inner_evals = 0;
    bool inner_ok = true;
    auto row = [&](double y) {
        if (inner_evals > max_evals) {
            inner_ok = false;  // budget exhausted, stop paying for refinement
            return 0.0;
        }
        const auto r =
            integrate_1d([&](double x) { return f(x, y); }, ax, bx, tol_inner, max_evals);
        inner_evals += r.evaluations;
        inner_ok = inner_ok && r.converged;
        return r.value;
    };

    QuadResult out = integrate_1d(row, ay, by, tol_outer, max_evals);
    out.error_estimate += tol_inner * std::abs(by - ay);
    out.evaluations = inner_evals;
    out.converged = out.converged && inner_ok && inner_evals <= max_evals;
    return out;
}

/// Numerically stable log(sum(exp(x_i))). Exact for a single element.
inline double log_sum_exp(std::span<const double> xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    double m = xs[0];
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;  // all -inf, or a +inf dominates
    if (xs.size() == 1) return xs[0];
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

inline double log_sum_exp(std::initializer_list<double> xs) {
    return log_sum_exp(std::span<const double>(xs.begin(), xs.size()));
}

}  // namespace thzcov
