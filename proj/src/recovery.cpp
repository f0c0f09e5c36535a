#include "gapfill/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapfill/errors.hpp"

namespace gapfill {

SignalWindow SignalWindow::symmetric(long long N) {
    SignalWindow win;
    win.start = -N;
    win.end = N;
    win.samples.assign(static_cast<std::size_t>(2 * N + 1), 0.0);
    win.missing.assign(static_cast<std::size_t>(2 * N + 1), 0);
    return win;
}

RecoveryResult recover(const SignalWindow& window, const RecoveryKernel& kernel,
                       long long shift, bool allow_truncated) {
    RecoveryResult out;
    out.truncation_radius = kernel.tap_radius;

    std::vector<long long> targets;
    for (long long t : kernel.missing.times) {
        targets.push_back(shift + t);
    }
    // The window's missing mask must be exactly shift + T. An estimate at a
    // misaligned mask is silently wrong, so both directions are hard errors
    // naming the offending index.
    for (long long t : targets) {
        if (!window.contains(t)) {
            throw InvalidArgument("recovery target " + std::to_string(t) +
                                  " lies outside the window");
        }
        if (!window.is_missing(t)) {
            throw MaskViolation(
                "index " + std::to_string(t) +
                    " should be missing for this kernel/shift but is marked "
                    "observed",
                t);
        }
    }
    for (long long s = window.start; s <= window.end; ++s) {
        if (window.is_missing(s) &&
            !std::binary_search(targets.begin(), targets.end(), s)) {
            throw MaskViolation(
                "missing index " + std::to_string(s) +
                    " is not in shift + T for this kernel",
                s);
        }
    }

    for (long long t : targets) {
        const long long lo = std::max(window.start, t - kernel.tap_radius);
        const long long hi = std::min(window.end, t + kernel.tap_radius);
        if (t - kernel.tap_radius < window.start ||
            t + kernel.tap_radius > window.end) {
            out.truncated = true;
            if (!allow_truncated) {
                throw WindowTooSmall(
                    "window [" + std::to_string(window.start) + ", " +
                    std::to_string(window.end) + "] does not cover taps of " +
                    std::to_string(t) + " +- " + std::to_string(kernel.tap_radius));
            }
        }
        double acc = 0.0;
        for (long long s = lo; s <= hi; ++s) {
            const double h = kernel.tap(t - s);
            if (window.is_missing(s)) {
                // Mask wins: a missing sample is never read. A nonzero tap
                // here means the kernel cannot shield it.
                if (h != 0.0) {
                    throw MaskViolation(
                        "nonzero tap would read missing sample at index " +
                            std::to_string(s),
                        s);
                }
                continue;
            }
            if (h != 0.0) {
                acc += h * window.at(s);
                ++out.used_taps;
            }
        }
        out.indices.push_back(t);
        out.estimates.push_back(acc);
    }
    return out;
}

double relative_error(const RecoveryResult& result, const SignalWindow& truth) {
    double num = 0.0;
    for (std::size_t i = 0; i < result.indices.size(); ++i) {
        const long long t = result.indices[i];
        const double d = result.estimates[i] - truth.at(t);
        num += d * d;
    }
    num = std::sqrt(num / static_cast<double>(result.indices.size()));

    const double half_width = static_cast<double>(truth.end - truth.start) / 2.0;
    double mass = 0.0;
    for (long long t = truth.start; t <= truth.end; ++t) {
        mass += truth.at(t) * truth.at(t);
    }
    const double den = std::sqrt(mass / half_width);
    if (den < 1e-14) {
        throw ZeroSignal("window RMS below 1e-14; relative error undefined");
    }
    return num / den;
}

double robustness_bound(double eps, double sigma, double kappa) {
    if (eps < 0.0 || sigma < 0.0 || kappa < 0.0) {
        throw InvalidArgument("robustness_bound arguments must be nonnegative");
    }
    return eps + sigma * (kappa + 1.0);
}

namespace {

// Trapezoid integral of f over [lo, hi] from grid samples, with linear
// interpolation onto the clipped boundary cells.
template <class F>
double trapezoid_clipped(std::span<const double> x, const F& f, double lo,
                         double hi, int* inside_count) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double a = x[i], b = x[i + 1];
        if (b <= lo || a >= hi) continue;
        double fa = f(i), fb = f(i + 1);
        if (a < lo) {
            const double u = (lo - a) / (b - a);
            fa = fa + u * (fb - fa);
            a = lo;
        }
        if (b > hi) {
            const double u = (hi - x[i]) / (x[i + 1] - x[i]);
            fb = f(i) + u * (f(i + 1) - f(i));
            b = hi;
        }
        acc += 0.5 * (fa + fb) * (b - a);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > lo && x[i] < hi) ++(*inside_count);
    }
    return acc;
}

}  // namespace

Diagnostic degeneracy_diagnostic(std::span<const double> omega,
                                 std::span<const double> abs_X,
                                 const CosineSpan& w, const BandGeometry& geom) {
    if (omega.size() != abs_X.size() || omega.size() < 2) {
        throw InvalidArgument("diagnostic grid and samples must align");
    }
    const double L = geom.lower();
    int inside = 0;
    Diagnostic d;
    auto zeta_f = [&](std::size_t i) {
        return std::abs(w.eval(omega[i])) * abs_X[i];
    };
    auto psi_f = [&](std::size_t i) { return abs_X[i] * abs_X[i]; };
    // Mirrored band: (-pi, -L) and (L, pi).
    d.zeta = trapezoid_clipped(omega, zeta_f, -M_PI, -L, &inside) +
             trapezoid_clipped(omega, zeta_f, L, M_PI, &inside);
    int ignore = 0;
    d.psi = std::sqrt(trapezoid_clipped(omega, psi_f, -M_PI, -L, &ignore) +
                      trapezoid_clipped(omega, psi_f, L, M_PI, &ignore));
    if (inside < 256) {
        throw GridTooCoarse("diagnostic grid has " + std::to_string(inside) +
                            " samples inside the mirrored band; need >= 256");
    }
    return d;
}

}  // namespace gapfill
