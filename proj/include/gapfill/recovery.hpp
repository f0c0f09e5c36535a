#pragma once

// Truncated-convolution estimation of missing samples and its error metrics.

#include <cstdint>
#include <span>
#include <vector>

#include "gapfill/band_space.hpp"
#include "gapfill/kernel.hpp"

namespace gapfill {

// Real samples over the inclusive index range [start, end] with a
// missing-sample mask. Missing samples are never read by recovery even when
// the buffer holds values there (mask wins), so ground truth can sit in the
// same window during benchmarks without leaking.
struct SignalWindow {
    long long start = 0;
    long long end = -1;
    std::vector<double> samples;
    std::vector<std::uint8_t> missing;

    static SignalWindow symmetric(long long N);

    long long size() const { return end - start + 1; }
    bool contains(long long t) const { return t >= start && t <= end; }
    double& at(long long t) { return samples[static_cast<std::size_t>(t - start)]; }
    double at(long long t) const { return samples[static_cast<std::size_t>(t - start)]; }
    bool is_missing(long long t) const {
        return missing[static_cast<std::size_t>(t - start)] != 0;
    }
    void mark_missing(long long t) { missing[static_cast<std::size_t>(t - start)] = 1; }
};

struct RecoveryResult {
    std::vector<long long> indices;   // shift + T, ascending
    std::vector<double> estimates;    // one per index
    long long used_taps = 0;          // observed samples that contributed
    long long truncation_radius = 0;  // kernel tap radius in effect
    bool truncated = false;           // window clipped the tap support
};

// Estimates x(t) for every t in shift + T as the kernel-weighted sum of the
// observed window samples. The kernel's zero set guarantees the sum never
// touches a missing index; a nonzero tap meeting a missing sample raises
// MaskViolation with that index. If the window does not cover the full tap
// support the sum is truncated; callers must opt in via allow_truncated or
// WindowTooSmall is raised.
RecoveryResult recover(const SignalWindow& window, const RecoveryKernel& kernel,
                       long long shift, bool allow_truncated);

// RMS error over the missing indices divided by the RMS window mass:
//   sqrt(mean over T of |est - truth|^2) / sqrt(sum x(t)^2 / N_half)
// with N_half the window half-width. Raises ZeroSignal when the denominator
// falls below 1e-14.
double relative_error(const RecoveryResult& result, const SignalWindow& truth);

// Guaranteed sup-norm recovery bound under additive noise of spectral L1
// intensity sigma: eps + sigma * (kappa + 1).
double robustness_bound(double eps, double sigma, double kappa);

struct Diagnostic {
    double zeta = 0.0;  // integral of |w X| over the mirrored band
    double psi = 0.0;   // L2 norm of X over the mirrored band
};

// Trapezoid evaluation of the degeneracy functionals from a sampled |X| grid.
// The grid must put at least 256 samples inside the mirrored band, else
// GridTooCoarse.
Diagnostic degeneracy_diagnostic(std::span<const double> omega,
                                 std::span<const double> abs_X,
                                 const CosineSpan& w, const BandGeometry& geom);

}  // namespace gapfill
