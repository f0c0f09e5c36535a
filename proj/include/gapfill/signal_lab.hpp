#pragma once

// Monte-Carlo generator of band-limited test signals, exact inverse
// transform, noise injection, and the benchmark driver.

#include <complex>
#include <cstdint>
#include <vector>

#include "gapfill/index_sets.hpp"
#include "gapfill/philox.hpp"
#include "gapfill/recovery.hpp"

namespace gapfill {

struct GeneratorConfig {
    int nbar = 10;          // Fourier harmonics and spectral subintervals
    double eps_band = 0.4;  // excluded band half-width at +-pi, radians
    long long N = 300;      // window truncation radius
    std::uint64_t seed = 1;
    int trials = 200;
    double sigma = 0.0;     // spectral L1 intensity of injected noise

    void validate() const;  // throws InvalidArgument
};

// Piecewise spectrum X1 on (-pi, pi]:
//   X1 = alpha_k * f1          on I_k = (-pi + (k-1) pi/nbar, -pi + k pi/nbar)
//   X1 = alpha_pos_k * conj(f1(-w))  mirrored onto (0, pi)
// with f1(w) = a0 + sum_j (a_j cos jw + b_j sin jw). alpha_pos is stored
// separately so tests can break Hermitian symmetry on purpose; generated
// profiles always have alpha_pos = conj(alpha), which makes the time-domain
// signal real. a0 is zero for generated profiles; it exists so closed-form
// fixtures (flat spectra) can be built by hand.
struct SpectralProfile {
    int nbar = 0;
    double a0 = 0.0;
    std::vector<double> a, b;                      // index j-1 holds harmonic j
    std::vector<std::complex<double>> alpha;       // negative-half piece scales
    std::vector<std::complex<double>> alpha_pos;   // positive-half piece scales

    std::complex<double> f1(double omega) const;
    std::complex<double> X1(double omega) const;
};

// Draw order is frozen for reproducibility: a_1, b_1, ..., a_nbar, b_nbar,
// then Re alpha_1, Im alpha_1, ..., Re alpha_nbar, Im alpha_nbar.
SpectralProfile generate_profile(const GeneratorConfig& cfg, CounterRng& rng);

// x(t) for |t| <= N from the clipped spectrum (X1 zeroed where
// |omega| > pi - eps_band), by exact per-piece antiderivatives. Each sample's
// imaginary residue must stay below 1e-9, else NonRealSignal.
std::vector<double> synthesize_samples(const SpectralProfile& profile,
                                       double eps_band, long long N);

// Same, packaged as a window on [-N, N] with nothing masked.
SignalWindow synthesize(const SpectralProfile& profile, const GeneratorConfig& cfg);

// Integral of |X1| over the kept band, by adaptive quadrature with the piece
// boundaries as mandatory splits.
double spectral_l1(const SpectralProfile& profile, double eps_band);

// Adds a full-band noise sequence whose spectral L1 norm is exactly sigma.
// sigma = 0 returns the window unchanged.
SignalWindow inject_noise(const SignalWindow& window, double sigma, int nbar,
                          CounterRng& rng);

struct ExperimentReport {
    std::vector<long long> missing;
    long long n = 0;
    GeneratorConfig cfg;

    double kappa_value = 0.0;
    double l1_mass_value = 0.0;
    double w_norm = 0.0;       // L2 norm of the band weight
    std::size_t mask_set_size = 0;

    // Index = trial id, so aggregation order never depends on scheduling.
    std::vector<double> errors;          // relative error vs noiseless truth
    std::vector<double> sup_errors;      // max abs error over missing points
    std::vector<double> noiseless_sup;   // only when sigma > 0

    double mean = 0.0;
    double median = 0.0;
    double stderr_mean = 0.0;
    double eps_hat = 0.0;            // max noiseless sup error (sigma > 0)
    double robustness = 0.0;         // eps_hat + sigma (kappa + 1)
};

// Runs cfg.trials independent trials: generate, synthesize, mask the missing
// times, recover, score. Parallel across trials (GAPFILL_THREADS caps the
// pool); the report is bit-identical for a given config regardless of thread
// count. Any trial failure propagates.
ExperimentReport run_experiment(const MissingIndexSet& T, long long n,
                                const GeneratorConfig& cfg);

// Thread-pool size: GAPFILL_THREADS when set (>= 1), else hardware count.
int experiment_threads();

}  // namespace gapfill
