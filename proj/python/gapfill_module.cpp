// Python bindings for the recovering-kernel library. The surface mirrors the
// CLI: kernel construction and diagnostics, window recovery, signal
// synthesis, and the Monte-Carlo benchmark.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "gapfill/band_space.hpp"
#include "gapfill/errors.hpp"
#include "gapfill/index_sets.hpp"
#include "gapfill/kernel.hpp"
#include "gapfill/philox.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/signal_lab.hpp"

namespace py = pybind11;

namespace {

gapfill::SignalWindow make_window(long long start,
                                  const std::vector<double>& samples,
                                  const std::vector<long long>& missing) {
    gapfill::SignalWindow window;
    window.start = start;
    window.end = start + static_cast<long long>(samples.size()) - 1;
    window.samples = samples;
    window.missing.assign(samples.size(), 0);
    for (long long t : missing) {
        if (!window.contains(t))
            throw gapfill::InvalidArgument("missing time outside the window");
        window.mark_missing(t);
    }
    return window;
}

py::dict report_dict(const gapfill::ExperimentReport& report) {
    py::dict d;
    d["missing"] = report.missing;
    d["n"] = report.n;
    d["kappa"] = report.kappa_value;
    d["l1_mass"] = report.l1_mass_value;
    d["w_norm"] = report.w_norm;
    d["mask_set_size"] = report.mask_set_size;
    d["errors"] = report.errors;
    d["sup_errors"] = report.sup_errors;
    d["mean"] = report.mean;
    d["median"] = report.median;
    d["stderr"] = report.stderr_mean;
    if (report.cfg.sigma > 0.0) {
        d["noiseless_sup"] = report.noiseless_sup;
        d["eps_hat"] = report.eps_hat;
        d["robustness_bound"] = report.robustness;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(gapfill, m) {
    m.doc() = "recovering-kernel toolkit for band-degenerate signals";

    py::register_exception<gapfill::Error>(m, "GapfillError");

    m.def(
        "difference_set",
        [](const std::vector<long long>& times) {
            return gapfill::difference_set(gapfill::MissingIndexSet::from(times));
        },
        py::arg("missing"), "difference set {t - s} of the missing times");

    m.def(
        "partition",
        [](const std::vector<long long>& times, long long n) {
            auto s = gapfill::partition(gapfill::MissingIndexSet::from(times), n);
            py::dict d;
            d["n"] = s.n;
            d["s_T"] = s.s_T;
            d["p_T"] = s.p_T;
            d["p_nT"] = s.p_nT;
            d["pbar_nT"] = s.pbar_nT;
            d["ordering"] = s.ordering;
            return d;
        },
        py::arg("missing"), py::arg("n"),
        "difference set split into the n-divisible block and the rest");

    py::class_<gapfill::RecoveryKernel>(m, "Kernel")
        .def_property_readonly(
            "missing",
            [](const gapfill::RecoveryKernel& k) { return k.missing.times; })
        .def_property_readonly(
            "n",
            [](const gapfill::RecoveryKernel& k) { return k.transfer.geom.n; })
        .def_property_readonly(
            "radius",
            [](const gapfill::RecoveryKernel& k) { return k.tap_radius; })
        .def("tap", &gapfill::RecoveryKernel::tap, py::arg("t"))
        .def("tap_unmasked", &gapfill::RecoveryKernel::tap_unmasked,
             py::arg("t"))
        .def("kappa",
             [](const gapfill::RecoveryKernel& k) {
                 return gapfill::kappa(k.transfer);
             })
        .def("l1_mass",
             [](const gapfill::RecoveryKernel& k) {
                 return gapfill::l1_mass(k.transfer);
             })
        .def("w_norm",
             [](const gapfill::RecoveryKernel& k) {
                 return std::sqrt(
                     gapfill::span_norm_sq(k.transfer.w, k.transfer.geom));
             })
        .def_property_readonly(
            "mask_set_size", [](const gapfill::RecoveryKernel& k) {
                return k.transfer.structure.s_T.size();
            });

    m.def(
        "build_kernel",
        [](const std::vector<long long>& missing, long long n,
           long long radius) {
            return gapfill::build_kernel(gapfill::MissingIndexSet::from(missing),
                                         n, radius);
        },
        py::arg("missing"), py::arg("n"), py::arg("radius") = 256);

    m.def(
        "recover_window",
        [](long long start, const std::vector<double>& samples,
           const std::vector<long long>& missing,
           const gapfill::RecoveryKernel& kernel, long long shift,
           bool allow_truncated) {
            auto window = make_window(start, samples, missing);
            auto result =
                gapfill::recover(window, kernel, shift, allow_truncated);
            py::dict d;
            d["indices"] = result.indices;
            d["estimates"] = result.estimates;
            d["truncated"] = result.truncated;
            d["used_taps"] = result.used_taps;
            return d;
        },
        py::arg("start"), py::arg("samples"), py::arg("missing"),
        py::arg("kernel"), py::arg("shift") = 0,
        py::arg("allow_truncated") = true,
        "estimate the samples at shift + kernel.missing from the window");

    m.def(
        "synthesize",
        [](int nbar, double eps, long long N, std::uint64_t seed) {
            gapfill::GeneratorConfig cfg;
            cfg.nbar = nbar;
            cfg.eps_band = eps;
            cfg.N = N;
            cfg.seed = seed;
            cfg.validate();
            gapfill::CounterRng rng(seed, 0);
            auto profile = gapfill::generate_profile(cfg, rng);
            return gapfill::synthesize_samples(profile, eps, N);
        },
        py::arg("nbar") = 10, py::arg("eps") = 0.4, py::arg("N") = 300,
        py::arg("seed") = 1,
        "one random band-limited signal on [-N, N], listed in time order");

    m.def(
        "bench",
        [](const std::vector<long long>& missing, long long n, long long N,
           double eps, int nbar, int trials, std::uint64_t seed,
           double sigma) {
            gapfill::GeneratorConfig cfg;
            cfg.nbar = nbar;
            cfg.eps_band = eps;
            cfg.N = N;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.sigma = sigma;
            auto report = gapfill::run_experiment(
                gapfill::MissingIndexSet::from(missing), n, cfg);
            return report_dict(report);
        },
        py::arg("missing"), py::arg("n"), py::arg("N") = 300,
        py::arg("eps") = 0.4, py::arg("nbar") = 10, py::arg("trials") = 200,
        py::arg("seed") = 1, py::arg("sigma") = 0.0,
        "Monte-Carlo recovery benchmark; returns the full report");
}
