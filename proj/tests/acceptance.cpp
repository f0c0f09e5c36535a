// Acceptance gate: one criterion per invocation (1..8), or all when no
// argument is given. Each criterion prints a single "[k] PASS|FAIL ..."
// verdict line plus the measurements behind it. Criteria that measure
// documented deviations stay red here on purpose; see README.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "gapfill/band_space.hpp"
#include "gapfill/errors.hpp"
#include "gapfill/index_sets.hpp"
#include "gapfill/io.hpp"
#include "gapfill/kernel.hpp"
#include "gapfill/quadrature.hpp"
#include "gapfill/philox.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/signal_lab.hpp"

using namespace gapfill;

namespace {

struct Instance {
    MissingIndexSet T;
    long long n = 0;
};

std::string set_str(const std::vector<long long>& times) {
    std::string s = "{";
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(times[i]);
    }
    return s + "}";
}

// Random (T, n) with |T| <= 5, times in [-20, 20], n in [2, 60], restricted
// to Gram condition < 1e8 so the projection is numerically trustworthy.
std::vector<Instance> sample_instances(std::size_t count, std::uint64_t seed) {
    CounterRng rng(seed, 0);
    std::vector<Instance> out;
    while (out.size() < count) {
        std::size_t size = 1 + rng.next_u32() % 5;
        std::set<long long> times;
        while (times.size() < size)
            times.insert(-20 + static_cast<long long>(rng.next_u32() % 41));
        long long n = 2 + static_cast<long long>(rng.next_u32() % 59);
        Instance inst{MissingIndexSet::from({times.begin(), times.end()}), n};
        auto st = partition(inst.T, n);
        auto geom = BandGeometry::make(n);
        if (!(gram_condition(st, geom) < 1e8)) continue;
        // An instance the library refuses (constant numerically inside the
        // span) has no weight to measure; resample.
        try {
            w(st, geom);
        } catch (const DegenerateProjection&) {
            continue;
        }
        out.push_back(std::move(inst));
    }
    return out;
}

double median_of_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---- criterion 1: orthogonality and normalization of the band weight ----
bool criterion_1() {
    auto instances = sample_instances(20, 101);
    double worst_ortho = 0.0, worst_norm = 0.0;
    bool ok = true, floor_ok = true;
    for (auto& inst : instances) {
        auto st = partition(inst.T, inst.n);
        auto geom = BandGeometry::make(inst.n);
        auto wn = w(st, geom);
        double ortho = 0.0;
        for (long long k : st.p_T)
            ortho = std::max(ortho, std::fabs(span_inner(wn, k, geom)));
        double norm = std::fabs(span_inner(wn, 0, geom) -
                                (M_PI - M_PI / static_cast<double>(inst.n)));
        double cmax = 0.0;
        for (const auto& term : wn.terms)
            cmax = std::max(cmax, std::fabs(term.coeff));
        std::printf("    T=%s n=%lld  max|(w,e_k)| %.3e  |(w,e_0)-target| %.3e"
                    "  max|coeff| %.3e\n",
                    set_str(inst.T.times).c_str(), inst.n, ortho, norm, cmax);
        worst_ortho = std::max(worst_ortho, ortho);
        worst_norm = std::max(worst_norm, norm);
        ok = ok && ortho <= 1e-10 && norm <= 1e-10;
        // The defect of the stored coefficients cannot beat their own
        // rounding: eps * max|coeff| is the storage quantization floor.
        double floor = std::max(1e-10, 8.0 * 2.220446049250313e-16 * cmax);
        floor_ok = floor_ok && ortho <= floor && norm <= floor;
    }
    std::printf("[1] %s orthogonality<=1e-10 and normalization<=1e-10 on 20 "
                "instances (worst %.3e / %.3e)\n",
                ok ? "PASS" : "FAIL", worst_ortho, worst_norm);
    if (!ok) {
        std::printf("    note: every defect above 1e-10 comes from an "
                    "instance whose weight has coefficients of magnitude "
                    "1e9..1e12 (the constant is nearly inside the cosine "
                    "span, so the normalizer is ~1e-12..1e-9); rounding such "
                    "coefficients to double already moves the inner products "
                    "by more than 1e-10, so no double-precision span can "
                    "meet the absolute bound there. The condition filter "
                    "watches the Gram matrix of the span only and cannot "
                    "exclude these. Against the storage floor "
                    "max(1e-10, 8*eps*max|coeff|) the suite %s.\n",
                    floor_ok ? "PASSES" : "FAILS");
    }
    return ok;
}

// ---- criterion 2: projection energy bounds, corrected constants ----
bool criterion_2() {
    auto instances = sample_instances(20, 101);
    bool ok = true;
    for (auto& inst : instances) {
        auto st = partition(inst.T, inst.n);
        auto geom = BandGeometry::make(inst.n);
        ProjectionInfo info;
        auto xin = xi(st, geom, &info);
        double norm_sq = span_norm_sq(xin, geom);
        double e0_sq = M_PI / static_cast<double>(inst.n);
        auto wn = w(st, geom);
        double w_norm = std::sqrt(span_norm_sq(wn, geom));
        double w_floor = (M_PI - M_PI / inst.n) * std::sqrt(inst.n / M_PI);

        bool pos = info.s > 0.0;
        bool energy = std::fabs(info.s - norm_sq) <= 1e-10;
        bool bessel = info.s <= e0_sq * (1.0 + 1e-12);
        bool lower = w_norm >= w_floor * (1.0 - 1e-12);
        std::printf("    T=%s n=%lld  s %.6e <= pi/n %.6e  ||w|| %.6e >= "
                    "floor %.6e  %s\n",
                    set_str(inst.T.times).c_str(), inst.n, info.s, e0_sq,
                    w_norm, w_floor,
                    (pos && energy && bessel && lower) ? "ok" : "VIOLATED");
        ok = ok && pos && energy && bessel && lower;
    }
    std::printf("    note: the alternative constants 1/n and "
                "(pi-pi/n)*sqrt(n) correspond to the normalized measure "
                "domega/pi; this implementation integrates with the plain "
                "domega measure, for which the sharp constants are pi/n and "
                "(pi-pi/n)*sqrt(n/pi).\n");
    std::printf("[2] %s 0 < s = ||xi||^2 <= pi/n and ||w|| >= "
                "(pi-pi/n)sqrt(n/pi) on 20 instances\n",
                ok ? "PASS" : "FAIL");
    return ok;
}

// ---- criterion 3: closed-form taps against the quadrature oracle ----
bool criterion_3() {
    auto instances = sample_instances(50, 303);
    CounterRng rng(304, 0);
    double worst = 0.0;
    bool ok = true, floor_ok = true;
    for (auto& inst : instances) {
        auto tf = make_transfer(inst.T, inst.n);
        long long t = -80 + static_cast<long long>(rng.next_u32() % 161);

        auto quad = integrate(
            [&](double omega) {
                return transfer_eval(tf, omega) * std::cos(omega * t);
            },
            0.0, M_PI, 1e-11, {tf.geom.lower()});
        double oracle = quad.value / M_PI;
        double diff = std::fabs(tilde_tap(tf, t) - oracle);
        worst = std::max(worst, diff);
        double cmax = 0.0;
        for (const auto& term : tf.w.terms)
            cmax = std::max(cmax, std::fabs(term.coeff));
        floor_ok = floor_ok &&
                   diff <= std::max(1e-8, 8.0 * 2.220446049250313e-16 * cmax);
        if (diff > 1e-8) {
            std::printf("    T=%s n=%lld t=%lld  |tap - oracle| %.3e  "
                        "max|coeff| %.3e\n",
                        set_str(inst.T.times).c_str(), inst.n, t, diff, cmax);
            ok = false;
        }

        // Difference-set taps must take the literal sinc branch, and the
        // center tap must be a true zero.
        if (tilde_tap(tf, 0) != 0.0) {
            std::printf("    T=%s n=%lld  tap(0) != 0\n",
                        set_str(inst.T.times).c_str(), inst.n);
            ok = false;
        }
        for (long long s : tf.structure.p_T) {
            double td = static_cast<double>(s);
            double nd = static_cast<double>(inst.n);
            double expected =
                std::sin(M_PI * td - M_PI * td / nd) / (M_PI * td);
            if (tilde_tap(tf, s) != expected || tilde_tap(tf, -s) != expected) {
                std::printf("    T=%s n=%lld  tap(%lld) not the exact sinc "
                            "value\n",
                            set_str(inst.T.times).c_str(), inst.n, s);
                ok = false;
            }
        }
    }
    std::printf("[3] %s taps match quadrature to 1e-8 on 50 triples (worst "
                "%.3e); difference-set and center taps exact\n",
                ok ? "PASS" : "FAIL", worst);
    if (!ok) {
        std::printf("    note: the misses are instances with near-degenerate "
                    "weights (coefficients 1e9..1e12); both the stored tap "
                    "and the quadrature of the stored transfer carry "
                    "rounding noise of order eps*max|coeff| there, so 1e-8 "
                    "is below the representable floor. Against "
                    "max(1e-8, 8*eps*max|coeff|) the suite %s.\n",
                    floor_ok ? "PASSES" : "FAILS");
    }
    return ok;
}

// ---- criterion 4: mask exactness and no reads of missing samples ----
bool criterion_4() {
    auto instances = sample_instances(10, 404);
    CounterRng rng(405, 0);
    bool ok = true;
    for (auto& inst : instances) {
        long long span = inst.T.times.back() - inst.T.times.front();
        long long radius = std::max<long long>(50, 2 * span);
        RecoveryKernel kernel;
        try {
            kernel = build_kernel(inst.T, inst.n, radius);
        } catch (const Error& e) {
            std::printf("    T=%s n=%lld  build failed: %s\n",
                        set_str(inst.T.times).c_str(), inst.n, e.what());
            ok = false;
            continue;
        }
        if (!is_member_H_T(kernel)) {
            std::printf("    T=%s n=%lld  mask not bit-exact\n",
                        set_str(inst.T.times).c_str(), inst.n);
            ok = false;
        }

        long long half = radius + inst.T.times.back() + 5;
        auto clean = SignalWindow::symmetric(half);
        for (long long t = -half; t <= half; ++t) clean.at(t) = rng.next_normal();
        for (long long t : inst.T.times) clean.mark_missing(t);
        auto poisoned = clean;
        for (long long t : inst.T.times)
            poisoned.at(t) = std::numeric_limits<double>::quiet_NaN();

        auto rc = recover(clean, kernel, 0, true);
        auto rp = recover(poisoned, kernel, 0, true);
        for (std::size_t i = 0; i < rp.estimates.size(); ++i) {
            if (!std::isfinite(rp.estimates[i]) ||
                rp.estimates[i] != rc.estimates[i]) {
                std::printf("    T=%s n=%lld  poisoned sample leaked into "
                            "estimate %zu\n",
                            set_str(inst.T.times).c_str(), inst.n, i);
                ok = false;
            }
        }
    }
    std::printf("[4] %s built kernels masked bit-exactly; NaN poisoning never "
                "reaches estimates (10 instances)\n",
                ok ? "PASS" : "FAIL");
    return ok;
}

// ---- criterion 5: in-band convergence along n at fixed radius ----
bool criterion_5() {
    const long long N = 1500;
    auto T = MissingIndexSet::from({0, 3});
    CounterRng rng(505, 0);
    std::vector<double> phases;
    for (int i = 0; i < 20; ++i) phases.push_back(2.0 * M_PI * rng.next_double());

    std::vector<double> medians;
    for (long long n : {4, 8, 15, 30}) {
        auto kernel = build_kernel(T, n, N);
        std::vector<double> errs;
        for (double phase : phases) {
            auto win = SignalWindow::symmetric(N);
            for (long long t = -N; t <= N; ++t)
                win.at(t) = std::cos(M_PI / 2.0 * t + phase);
            win.mark_missing(0);
            win.mark_missing(3);
            auto r = recover(win, kernel, 0, true);
            errs.push_back(relative_error(r, win));
        }
        medians.push_back(median_of_sorted(errs));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < medians.size(); ++i)
        decreasing = decreasing && medians[i] < medians[i - 1];
    bool small_tail = medians.back() < 0.05;
    std::printf("    medians along n=4,8,15,30: %.6f %.6f %.6f %.6f\n",
                medians[0], medians[1], medians[2], medians[3]);
    bool ok = decreasing && small_tail;
    std::printf("[5] %s median error decreasing in n and < 0.05 at n=30 "
                "(x = cos(pi t/2 + phase), T={0,3}, radius 1500)%s\n",
                ok ? "PASS" : "FAIL",
                ok ? "" : "; measured sequence increases - the band weight "
                          "grows with n while the mask term of this signal "
                          "vanishes, so truncation dominates; see README");
    return ok;
}

// ---- criterion 6: Monte-Carlo reproduction bands ----
bool criterion_6() {
    struct Row {
        std::vector<long long> times;
        long long N;
        double lo, hi, published;
    };
    std::vector<Row> rows = {{{0, 15}, 150, 0.013, 0.12, 0.04},
                             {{0, 15}, 300, 0.002, 0.02, 0.006},
                             {{0, 3}, 300, 0.07, 0.65, 0.2152},
                             {{0, 3}, 1500, 0.028, 0.25, 0.084}};
    GeneratorConfig cfg;
    cfg.trials = 200;
    cfg.seed = 1;

    bool ok = true;
    double mean_300 = 0.0, mean_1500 = 0.0;
    for (auto& row : rows) {
        cfg.N = row.N;
        auto report = run_experiment(MissingIndexSet::from(row.times), 15, cfg);
        bool in_band = report.mean >= row.lo && report.mean <= row.hi;
        std::printf("    T=%s N=%lld  mean %.6f  band [%.3f, %.3f] "
                    "(published %.4f)  %s\n",
                    set_str(row.times).c_str(), row.N, report.mean, row.lo,
                    row.hi, row.published, in_band ? "ok" : "OUT OF BAND");
        ok = ok && in_band;
        if (row.times == std::vector<long long>{0, 3}) {
            (row.N == 300 ? mean_300 : mean_1500) = report.mean;
        }
    }
    bool ordered = mean_1500 < mean_300;
    std::printf("    paired ordering: mean(N=1500) %.6f %s mean(N=300) %.6f\n",
                mean_1500, ordered ? "<" : ">=", mean_300);
    ok = ok && ordered;
    std::printf("[6] %s four means inside their bands and paired ordering "
                "mean(N=1500) < mean(N=300)%s\n",
                ok ? "PASS" : "FAIL",
                ok ? "" : "; the exact synthesizer leaves no integrator "
                          "noise, so T={0,3} errors are dominated by an "
                          "N-free mask term over a 1/sqrt(N) normalizer; "
                          "see README");
    return ok;
}

// ---- criterion 7: empirical robustness bound under noise ----
bool criterion_7() {
    GeneratorConfig cfg;
    cfg.N = 300;
    cfg.trials = 200;
    cfg.seed = 7;
    auto T = MissingIndexSet::from({0, 3});

    bool ok = true;
    for (double sigma : {0.05, 0.1}) {
        cfg.sigma = sigma;
        auto report = run_experiment(T, 8, cfg);
        double allowance = 0.05 * sigma * (report.kappa_value + 1.0);
        double bound = report.eps_hat + sigma * (report.kappa_value + 1.0) +
                       allowance;
        int violations = 0;
        for (double sup : report.sup_errors)
            if (sup > bound) ++violations;
        double rate = 100.0 * (cfg.trials - violations) / cfg.trials;
        std::printf("    sigma %.2f  eps_hat %.6f  kappa %.3f  bound %.4f  "
                    "within bound %.1f%%\n",
                    sigma, report.eps_hat, report.kappa_value, bound, rate);
        ok = ok && violations <= cfg.trials / 100;
    }
    std::printf("[7] %s sup error <= eps_hat + sigma(kappa+1) + truncation "
                "allowance in >= 99%% of 200 trials at sigma in {0.05, 0.1}\n",
                ok ? "PASS" : "FAIL");
    return ok;
}

// ---- criterion 8: bit-identical reruns ----
bool criterion_8() {
    GeneratorConfig cfg;
    cfg.N = 100;
    cfg.trials = 50;
    cfg.seed = 9;
    cfg.sigma = 0.05;
    auto T = MissingIndexSet::from({0, 3});

    auto a = run_experiment(T, 8, cfg);
    auto b = run_experiment(T, 8, cfg);
    bool same = a.errors == b.errors && a.sup_errors == b.sup_errors &&
                a.noiseless_sup == b.noiseless_sup && a.mean == b.mean &&
                a.median == b.median && a.stderr_mean == b.stderr_mean &&
                report_to_json(a) == report_to_json(b);

    setenv("GAPFILL_THREADS", "1", 1);
    auto t1 = run_experiment(T, 8, cfg);
    setenv("GAPFILL_THREADS", "4", 1);
    auto t4 = run_experiment(T, 8, cfg);
    unsetenv("GAPFILL_THREADS");
    bool thread_same =
        t1.errors == t4.errors && report_to_json(t1) == report_to_json(t4);

    bool ok = same && thread_same;
    std::printf("[8] %s reruns bit-identical (same seed%s; thread pool 1 vs "
                "4%s)\n",
                ok ? "PASS" : "FAIL", same ? " ok" : " MISMATCH",
                thread_same ? " ok" : " MISMATCH");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    bool (*criteria[])() = {criterion_1, criterion_2, criterion_3,
                            criterion_4, criterion_5, criterion_6,
                            criterion_7, criterion_8};
    try {
        if (argc > 1) {
            int k = std::atoi(argv[1]);
            if (k < 1 || k > 8) {
                std::fprintf(stderr, "usage: acceptance [1..8]\n");
                return 2;
            }
            return criteria[k - 1]() ? 0 : 1;
        }
        int failures = 0;
        for (auto* c : criteria) failures += c() ? 0 : 1;
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "aborted: %s\n", e.what());
        return 3;
    }
}
