// gapfill: synthesize recovering kernels, fill missing samples, diagnose
// spectra, and run the Monte-Carlo benchmark.
//
// Exit codes: 0 success, 2 invalid flags or input files, 3 ill-conditioned
// kernel construction, 4 missing-sample mask mismatch, 5 benchmark trial
// failure. Output is deterministic for fixed flags, including seeds.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gapfill/band_space.hpp"
#include "gapfill/errors.hpp"
#include "gapfill/index_sets.hpp"
#include "gapfill/io.hpp"
#include "gapfill/kernel.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/signal_lab.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIllConditioned = 3;
constexpr int kExitMaskViolation = 4;
constexpr int kExitTrialFailure = 5;

struct KernelFlags {
    std::vector<long long> missing;
    long long n = 0;
    long long radius = 256;
    std::string out;
};

struct RecoverFlags {
    std::string kernel_path;
    std::vector<long long> missing;
    long long n = 0;
    long long radius = 256;
    std::string input;
    std::string truth;
    std::string out;
    long long shift = 0;
    bool allow_truncated = false;
};

struct DiagnoseFlags {
    std::vector<long long> missing;
    long long n = 0;
    std::string input;
    int grid = 8192;
};

struct BenchFlags {
    std::vector<long long> missing;
    long long n = 0;
    gapfill::GeneratorConfig cfg;
    std::string json_out;
    std::string csv_out;
};

gapfill::RecoveryKernel load_or_build(const RecoverFlags& f) {
    if (!f.kernel_path.empty()) return gapfill::read_kernel_json(f.kernel_path);
    auto T = gapfill::MissingIndexSet::from(f.missing);
    return gapfill::build_kernel(T, f.n, f.radius);
}

int cmd_kernel(const KernelFlags& f) {
    auto T = gapfill::MissingIndexSet::from(f.missing);
    auto kernel = gapfill::build_kernel(T, f.n, f.radius);
    double kap = gapfill::kappa(kernel.transfer);
    double mass = gapfill::l1_mass(kernel.transfer);
    double wn = std::sqrt(gapfill::span_norm_sq(kernel.transfer.w,
                                                kernel.transfer.geom));
    std::size_t mask = kernel.transfer.structure.s_T.size();
    std::printf("kappa %.12g  l1_mass %.12g  w_norm %.12g  mask_set_size %zu\n",
                kap, mass, wn, mask);
    if (!f.out.empty()) {
        gapfill::write_kernel_json(kernel, f.out);
        std::printf("wrote %s\n", f.out.c_str());
    }
    return 0;
}

int cmd_recover(const RecoverFlags& f) {
    auto kernel = load_or_build(f);
    auto window = gapfill::read_signal_csv(f.input);
    auto result = gapfill::recover(window, kernel, f.shift, f.allow_truncated);
    if (result.truncated)
        std::printf("note: window clipped the tap support at radius %lld\n",
                    static_cast<long long>(result.truncation_radius));
    for (std::size_t i = 0; i < result.indices.size(); ++i)
        std::printf("x[%lld] = %.17g\n", result.indices[i], result.estimates[i]);

    if (!f.truth.empty()) {
        auto truth = gapfill::read_signal_csv(f.truth);
        double err = gapfill::relative_error(result, truth);
        std::printf("relative_error %.12g\n", err);
        if (!f.out.empty()) gapfill::write_results_csv(result, &truth, f.out);
    } else if (!f.out.empty()) {
        gapfill::write_results_csv(result, nullptr, f.out);
    }
    if (!f.out.empty()) std::printf("wrote %s\n", f.out.c_str());
    return 0;
}

// Direct DTFT magnitude of the observed samples. Missing samples contribute
// zero, which matches how a consumer of the window would see the signal.
std::vector<double> dtft_magnitude(const gapfill::SignalWindow& window,
                                   const std::vector<double>& omega) {
    std::vector<double> mag(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (long long t = window.start; t <= window.end; ++t) {
            if (window.is_missing(t)) continue;
            double v = window.at(t);
            if (v == 0.0) continue;
            acc += v * std::exp(std::complex<double>(0.0, -omega[i] * t));
        }
        mag[i] = std::abs(acc);
    }
    return mag;
}

int cmd_diagnose(const DiagnoseFlags& f) {
    auto T = gapfill::MissingIndexSet::from(f.missing);
    auto structure = gapfill::partition(T, f.n);
    auto geom = gapfill::BandGeometry::make(f.n);
    auto weight = gapfill::w(structure, geom);

    auto window = gapfill::read_signal_csv(f.input);
    if (f.grid < 2) throw gapfill::InvalidArgument("--grid must be >= 2");
    std::vector<double> omega(static_cast<std::size_t>(f.grid));
    for (int i = 0; i < f.grid; ++i)
        omega[static_cast<std::size_t>(i)] =
            -M_PI + 2.0 * M_PI * i / (f.grid - 1);
    auto mag = dtft_magnitude(window, omega);
    auto diag = gapfill::degeneracy_diagnostic(omega, mag, weight, geom);
    std::printf("zeta %.12g  psi %.12g\n", diag.zeta, diag.psi);
    return 0;
}

int cmd_bench(const BenchFlags& f) {
    auto T = gapfill::MissingIndexSet::from(f.missing);
    auto report = gapfill::run_experiment(T, f.n, f.cfg);
    std::printf("kappa %.12g  l1_mass %.12g  w_norm %.12g  mask_set_size %zu\n",
                report.kappa_value, report.l1_mass_value, report.w_norm,
                report.mask_set_size);
    std::printf("trials %d  mean %.12g  median %.12g  stderr %.12g\n",
                f.cfg.trials, report.mean, report.median, report.stderr_mean);
    if (f.cfg.sigma > 0.0)
        std::printf("robustness_bound %.12g  (eps_hat %.12g, sigma %.12g, "
                    "kappa %.12g)\n",
                    report.robustness, report.eps_hat, f.cfg.sigma,
                    report.kappa_value);
    if (!f.json_out.empty()) {
        gapfill::write_report_json(report, f.json_out);
        std::printf("wrote %s\n", f.json_out.c_str());
    }
    if (!f.csv_out.empty()) {
        gapfill::write_report_csv(report, f.csv_out);
        std::printf("wrote %s\n", f.csv_out.c_str());
    }
    return 0;
}

void add_missing_n(CLI::App* sub, std::vector<long long>& missing,
                   long long& n, bool required) {
    auto* m = sub->add_option("--missing,-T", missing,
                              "missing sample times, comma separated")
                  ->delimiter(',');
    auto* nn = sub->add_option("--n", n, "band parameter n >= 2");
    if (required) {
        m->required();
        nn->required();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"recovering-kernel toolkit for band-degenerate signals"};
    app.require_subcommand(1);

    KernelFlags kf;
    auto* sk = app.add_subcommand("kernel",
                                  "build a recovering kernel and report its "
                                  "diagnostics");
    add_missing_n(sk, kf.missing, kf.n, true);
    sk->add_option("--radius", kf.radius, "taps per side (default 256)");
    sk->add_option("--out,-o", kf.out, "kernel JSON output path");

    RecoverFlags rf;
    auto* sr = app.add_subcommand("recover",
                                  "estimate missing samples of a signal CSV");
    sr->add_option("--kernel,-k", rf.kernel_path, "kernel JSON path");
    add_missing_n(sr, rf.missing, rf.n, false);
    sr->add_option("--radius", rf.radius,
                   "taps per side when building in place (default 256)");
    sr->add_option("--input,-i", rf.input, "signal CSV path")->required();
    sr->add_option("--truth", rf.truth,
                   "ground-truth CSV; enables the error column");
    sr->add_option("--out,-o", rf.out, "results CSV output path");
    sr->add_option("--shift", rf.shift,
                   "recover shift + T instead of T (default 0)");
    sr->add_flag("--allow-truncated", rf.allow_truncated,
                 "permit a window smaller than the tap support");

    DiagnoseFlags df;
    auto* sd = app.add_subcommand("diagnose",
                                  "band-degeneracy functionals of a signal "
                                  "CSV");
    add_missing_n(sd, df.missing, df.n, true);
    sd->add_option("--input,-i", df.input, "signal CSV path")->required();
    sd->add_option("--grid", df.grid,
                   "spectrum sample count on [-pi, pi] (default 8192)");

    BenchFlags bf;
    auto* sb = app.add_subcommand("bench",
                                  "Monte-Carlo recovery benchmark");
    add_missing_n(sb, bf.missing, bf.n, true);
    sb->add_option("--N", bf.cfg.N, "window truncation radius (default 300)");
    sb->add_option("--eps", bf.cfg.eps_band,
                   "excluded band half-width (default 0.4)");
    sb->add_option("--nbar", bf.cfg.nbar,
                   "harmonics / spectral pieces (default 10)");
    sb->add_option("--trials", bf.cfg.trials, "trial count (default 200)");
    sb->add_option("--seed", bf.cfg.seed, "generator seed (default 1)");
    sb->add_option("--sigma", bf.cfg.sigma,
                   "noise spectral L1 intensity (default 0)");
    sb->add_option("--json", bf.json_out, "report JSON output path");
    sb->add_option("--csv", bf.csv_out, "report CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    bool in_bench = sb->parsed();
    try {
        if (sk->parsed()) return cmd_kernel(kf);
        if (sr->parsed()) return cmd_recover(rf);
        if (sd->parsed()) return cmd_diagnose(df);
        return cmd_bench(bf);
    } catch (const gapfill::InvalidArgument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const gapfill::MaskViolation& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return in_bench ? kExitTrialFailure : kExitMaskViolation;
    } catch (const gapfill::IllConditioned& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIllConditioned;
    } catch (const gapfill::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return in_bench ? kExitTrialFailure : kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
}
