#pragma once

// Adaptive Gauss-Kronrod 7/15 quadrature for piecewise-smooth integrands.
// Caller-supplied breakpoints are mandatory split positions: integrating
// across a kink or jump wastes most of the subdivision budget, so known
// discontinuity locations are seeded into the interval list up front.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "gapfill/errors.hpp"

namespace gapfill {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// Standard 15-point Kronrod abscissae on [-1,1] (positive half) with the
// embedded 7-point Gauss rule on the odd-indexed nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

template <class F>
inline void gk15(const F& f, double a, double b, double* value, double* err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double fsum = f(c - x) + f(c + x);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * fsum;
        }
    }
    *value = result_kronrod * h;
    *err = std::abs((result_kronrod - result_gauss) * h);
}

}  // namespace detail

// Integrates f over [a, b] to the requested absolute tolerance. Splits at
// the supplied breakpoints first, then bisects the interval with the largest
// error estimate until the tolerance or the interval budget is reached.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol,
                     std::vector<double> breakpoints = {},
                     int max_intervals = 2000) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    struct Interval {
        double a, b, value, err;
    };
    std::vector<Interval> work;

    std::vector<double> edges;
    edges.push_back(a);
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Interval iv{edges[i], edges[i + 1], 0.0, 0.0};
        detail::gk15(f, iv.a, iv.b, &iv.value, &iv.err);
        out.evaluations += 15;
        work.push_back(iv);
    }

    auto totals = [&work]() {
        double v = 0.0, e = 0.0;
        for (const auto& iv : work) {
            v += iv.value;
            e += iv.err;
        }
        return std::pair<double, double>{v, e};
    };

    auto [value, err] = totals();
    while (err > abs_tol && static_cast<int>(work.size()) < max_intervals) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i) {
            if (work[i].err > work[worst].err) worst = i;
        }
        Interval iv = work[worst];
        const double mid = 0.5 * (iv.a + iv.b);
        if (mid <= iv.a || mid >= iv.b) break;  // interval at double resolution
        Interval left{iv.a, mid, 0.0, 0.0};
        Interval right{mid, iv.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, &left.value, &left.err);
        detail::gk15(f, right.a, right.b, &right.value, &right.err);
        out.evaluations += 30;
        work[worst] = left;
        work.push_back(right);
        std::tie(value, err) = totals();
    }

    out.value = value;
    out.error_estimate = err;
    out.converged = err <= abs_tol;
    return out;
}

}  // namespace gapfill
