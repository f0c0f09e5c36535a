#include "gapfill/signal_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "gapfill/errors.hpp"
#include "gapfill/quadrature.hpp"

namespace gapfill {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

void GeneratorConfig::validate() const {
    if (nbar < 1) throw InvalidArgument("nbar must be >= 1");
    if (!(eps_band > 0.0 && eps_band < M_PI)) {
        throw InvalidArgument("eps_band must lie in (0, pi)");
    }
    if (N < 1) throw InvalidArgument("N must be >= 1");
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (sigma < 0.0) throw InvalidArgument("sigma must be >= 0");
}

std::complex<double> SpectralProfile::f1(double omega) const {
    std::complex<double> acc{a0, 0.0};
    for (int j = 1; j <= nbar; ++j) {
        const double jo = static_cast<double>(j) * omega;
        acc += std::complex<double>(a[j - 1] * std::cos(jo) + b[j - 1] * std::sin(jo),
                                    0.0);
    }
    return acc;
}

std::complex<double> SpectralProfile::X1(double omega) const {
    const double width = M_PI / static_cast<double>(nbar);
    if (omega <= 0.0) {
        auto k = static_cast<int>(std::floor((omega + M_PI) / width));
        k = std::clamp(k, 0, nbar - 1);
        return alpha[static_cast<std::size_t>(k)] * f1(omega);
    }
    auto k = static_cast<int>(std::floor((M_PI - omega) / width));
    k = std::clamp(k, 0, nbar - 1);
    return alpha_pos[static_cast<std::size_t>(k)] * std::conj(f1(-omega));
}

SpectralProfile generate_profile(const GeneratorConfig& cfg, CounterRng& rng) {
    SpectralProfile p;
    p.nbar = cfg.nbar;
    p.a.resize(static_cast<std::size_t>(cfg.nbar));
    p.b.resize(static_cast<std::size_t>(cfg.nbar));
    for (int j = 0; j < cfg.nbar; ++j) {
        p.a[static_cast<std::size_t>(j)] = rng.next_normal();
        p.b[static_cast<std::size_t>(j)] = rng.next_normal();
    }
    p.alpha.resize(static_cast<std::size_t>(cfg.nbar));
    p.alpha_pos.resize(static_cast<std::size_t>(cfg.nbar));
    for (int k = 0; k < cfg.nbar; ++k) {
        const double re = rng.next_normal();
        const double im = rng.next_normal();
        p.alpha[static_cast<std::size_t>(k)] = {re, im};
        p.alpha_pos[static_cast<std::size_t>(k)] = {re, -im};
    }
    return p;
}

namespace {

// integral of e^{i mu w} over [a, b]
std::complex<double> phase_integral(double mu, double a, double b) {
    if (mu == 0.0) return {b - a, 0.0};
    const std::complex<double> num =
        std::polar(1.0, mu * b) - std::polar(1.0, mu * a);
    return num / std::complex<double>(0.0, mu);
}

}  // namespace

std::vector<double> synthesize_samples(const SpectralProfile& profile,
                                       double eps_band, long long N) {
    const int nbar = profile.nbar;
    const double width = M_PI / static_cast<double>(nbar);
    const double clip_lo = -M_PI + eps_band;

    // Fourier coefficients of f1: gamma_0 = a0,
    // gamma_{+-j} = (a_j -+ i b_j) / 2.
    std::vector<std::complex<double>> gamma(static_cast<std::size_t>(2 * nbar + 1));
    auto gat = [&gamma, nbar](int m) -> std::complex<double>& {
        return gamma[static_cast<std::size_t>(m + nbar)];
    };
    gat(0) = {profile.a0, 0.0};
    for (int j = 1; j <= nbar; ++j) {
        const double aj = profile.a[static_cast<std::size_t>(j - 1)];
        const double bj = profile.b[static_cast<std::size_t>(j - 1)];
        gat(j) = {0.5 * aj, -0.5 * bj};
        gat(-j) = {0.5 * aj, 0.5 * bj};
    }

    // Clipped pieces of the negative half.
    struct Piece {
        double a, b;
        std::complex<double> scale_neg, scale_pos;
    };
    std::vector<Piece> pieces;
    for (int k = 1; k <= nbar; ++k) {
        const double lo = -M_PI + static_cast<double>(k - 1) * width;
        const double hi = -M_PI + static_cast<double>(k) * width;
        const double a = std::max(lo, clip_lo);
        const double b = std::min(hi, 0.0);
        if (a >= b) continue;
        pieces.push_back({a, b, profile.alpha[static_cast<std::size_t>(k - 1)],
                          profile.alpha_pos[static_cast<std::size_t>(k - 1)]});
    }

    std::vector<double> x(static_cast<std::size_t>(2 * N + 1));
    double worst_residue = 0.0;
    long long worst_t = 0;
    for (long long t = -N; t <= N; ++t) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& piece : pieces) {
            // F = integral over the piece of f1(w) e^{i t w} dw. The mirrored
            // positive-half piece contributes the conjugate of F scaled by
            // alpha_pos, which keeps x real exactly when alpha_pos is the
            // conjugate of alpha.
            std::complex<double> F{0.0, 0.0};
            for (int m = -nbar; m <= nbar; ++m) {
                const std::complex<double> g = gat(m);
                if (g == std::complex<double>{0.0, 0.0}) continue;
                F += g * phase_integral(static_cast<double>(m + t), piece.a, piece.b);
            }
            acc += piece.scale_neg * F + piece.scale_pos * std::conj(F);
        }
        acc /= kTwoPi;
        if (std::abs(acc.imag()) > worst_residue) {
            worst_residue = std::abs(acc.imag());
            worst_t = t;
        }
        x[static_cast<std::size_t>(t + N)] = acc.real();
    }
    if (worst_residue > 1e-9) {
        throw NonRealSignal("imaginary residue " + std::to_string(worst_residue) +
                                " at t = " + std::to_string(worst_t) +
                                "; spectral profile is not Hermitian",
                            worst_residue);
    }
    return x;
}

SignalWindow synthesize(const SpectralProfile& profile, const GeneratorConfig& cfg) {
    cfg.validate();
    SignalWindow win = SignalWindow::symmetric(cfg.N);
    win.samples = synthesize_samples(profile, cfg.eps_band, cfg.N);
    return win;
}

double spectral_l1(const SpectralProfile& profile, double eps_band) {
    const int nbar = profile.nbar;
    const double width = M_PI / static_cast<double>(nbar);
    const double clip_lo = -M_PI + eps_band;
    double total = 0.0;
    for (int k = 1; k <= nbar; ++k) {
        const double lo = -M_PI + static_cast<double>(k - 1) * width;
        const double hi = -M_PI + static_cast<double>(k) * width;
        const double a = std::max(lo, clip_lo);
        const double b = std::min(hi, 0.0);
        if (a >= b) continue;
        const double piece =
            integrate([&profile](double om) { return std::abs(profile.f1(om)); },
                      a, b, 1e-11, {}, 2000)
                .value;
        // |X1| integrates to |alpha| |f1| on the piece and |alpha_pos| |f1|
        // on its mirror.
        total += (std::abs(profile.alpha[static_cast<std::size_t>(k - 1)]) +
                  std::abs(profile.alpha_pos[static_cast<std::size_t>(k - 1)])) *
                 piece;
    }
    return total;
}

SignalWindow inject_noise(const SignalWindow& window, double sigma, int nbar,
                          CounterRng& rng) {
    if (sigma == 0.0) return window;
    if (sigma < 0.0) throw InvalidArgument("sigma must be >= 0");
    GeneratorConfig noise_cfg;
    noise_cfg.nbar = nbar;
    noise_cfg.eps_band = 0.0;  // full-band: the noise is not recoverable
    SpectralProfile profile = generate_profile(noise_cfg, rng);
    const double l1 = spectral_l1(profile, 0.0);
    const double scale = sigma / l1;
    const long long N = (window.end - window.start) / 2;
    const std::vector<double> eta = synthesize_samples(profile, 0.0, N);
    SignalWindow out = window;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] += scale * eta[i];
    }
    return out;
}

int experiment_threads() {
    if (const char* env = std::getenv("GAPFILL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw InvalidArgument("GAPFILL_THREADS must be a positive integer");
        }
        return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

double neumaier_mean(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace

ExperimentReport run_experiment(const MissingIndexSet& T, long long n,
                                const GeneratorConfig& cfg) {
    cfg.validate();
    if (T.max_abs() > cfg.N)
        throw InvalidArgument("missing times must lie inside the window [-N, N]");
    ExperimentReport report;
    report.missing = T.times;
    report.n = n;
    report.cfg = cfg;

    const long long radius = cfg.N + T.max_abs();
    auto kernel = KernelCache::instance().get(T, n, radius);
    report.kappa_value = kappa(kernel->transfer);
    report.l1_mass_value = l1_mass(kernel->transfer);
    report.w_norm = std::sqrt(span_norm_sq(kernel->transfer.w, kernel->transfer.geom));
    report.mask_set_size = kernel->transfer.structure.s_T.size();

    report.errors.assign(static_cast<std::size_t>(cfg.trials), 0.0);
    report.sup_errors.assign(static_cast<std::size_t>(cfg.trials), 0.0);
    if (cfg.sigma > 0.0) {
        report.noiseless_sup.assign(static_cast<std::size_t>(cfg.trials), 0.0);
    }

    auto run_trial = [&](int trial) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
        const SpectralProfile profile = generate_profile(cfg, rng);
        SignalWindow truth = synthesize(profile, cfg);
        SignalWindow observed = truth;
        for (long long t : T.times) observed.mark_missing(t);

        if (cfg.sigma > 0.0) {
            // Noiseless pass first: per-trial baseline for the robustness
            // bound, drawn before the noise stream so both passes share the
            // signal.
            const RecoveryResult clean = recover(observed, *kernel, 0, true);
            double sup = 0.0;
            for (std::size_t i = 0; i < clean.indices.size(); ++i) {
                sup = std::max(sup, std::abs(clean.estimates[i] -
                                             truth.at(clean.indices[i])));
            }
            report.noiseless_sup[static_cast<std::size_t>(trial)] = sup;
            observed = inject_noise(observed, cfg.sigma, cfg.nbar, rng);
        }

        const RecoveryResult result = recover(observed, *kernel, 0, true);
        report.errors[static_cast<std::size_t>(trial)] =
            relative_error(result, truth);
        double sup = 0.0;
        for (std::size_t i = 0; i < result.indices.size(); ++i) {
            sup = std::max(sup,
                           std::abs(result.estimates[i] - truth.at(result.indices[i])));
        }
        report.sup_errors[static_cast<std::size_t>(trial)] = sup;
    };

    const int pool = std::min(experiment_threads(), cfg.trials);
    if (pool <= 1) {
        for (int trial = 0; trial < cfg.trials; ++trial) run_trial(trial);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mu;
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(pool));
        for (int i = 0; i < pool; ++i) {
            workers.emplace_back([&]() {
                for (;;) {
                    const int trial = next.fetch_add(1);
                    if (trial >= cfg.trials) return;
                    try {
                        run_trial(trial);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mu);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& worker : workers) worker.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    report.mean = neumaier_mean(report.errors);
    report.median = median_of(report.errors);
    if (cfg.trials > 1) {
        double ss = 0.0;
        for (double e : report.errors) {
            ss += (e - report.mean) * (e - report.mean);
        }
        const double sd = std::sqrt(ss / static_cast<double>(cfg.trials - 1));
        report.stderr_mean = sd / std::sqrt(static_cast<double>(cfg.trials));
    }
    if (cfg.sigma > 0.0) {
        report.eps_hat =
            *std::max_element(report.noiseless_sup.begin(), report.noiseless_sup.end());
        report.robustness = robustness_bound(report.eps_hat, cfg.sigma,
                                             report.kappa_value);
    }
    return report;
}

}  // namespace gapfill
