#include "gapfill/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "gapfill/errors.hpp"

namespace gapfill {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open for reading: " + path);
    return in;
}

json span_to_json(const CosineSpan& span) {
    json terms = json::array();
    for (const auto& t : span.terms) {
        terms.push_back({{"freq", t.freq}, {"coeff", t.coeff}});
    }
    return {{"n", span.n}, {"terms", terms}};
}

}  // namespace

void write_kernel_json(const RecoveryKernel& kernel, const std::string& path,
                       bool include_taps) {
    json doc;
    doc["T"] = kernel.missing.times;
    doc["n"] = kernel.transfer.geom.n;
    doc["tap_radius"] = kernel.tap_radius;
    doc["w"] = span_to_json(kernel.transfer.w);
    if (include_taps) {
        json taps = json::array();
        for (long long t = -kernel.tap_radius; t <= kernel.tap_radius; ++t) {
            taps.push_back({{"t", t}, {"value", kernel.tap(t)}});
        }
        doc["taps"] = std::move(taps);
    }
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

RecoveryKernel read_kernel_json(const std::string& path) {
    json doc;
    try {
        open_in(path) >> doc;
    } catch (const json::exception& e) {
        throw InvalidArgument("malformed kernel JSON " + path + ": " + e.what());
    }
    try {
        const auto T = MissingIndexSet::from(
            doc.at("T").get<std::vector<long long>>());
        const auto n = doc.at("n").get<long long>();
        const auto radius = doc.at("tap_radius").get<long long>();
        RecoveryKernel kernel = build_kernel(T, n, radius);
        if (doc.contains("taps")) {
            for (const auto& row : doc.at("taps")) {
                const auto t = row.at("t").get<long long>();
                if (std::llabs(t) > radius) {
                    throw InvalidArgument("tap index beyond radius in " + path);
                }
                kernel.masked_[static_cast<std::size_t>(std::llabs(t))] =
                    row.at("value").get<double>();
            }
        }
        return kernel;
    } catch (const json::exception& e) {
        throw InvalidArgument("kernel JSON " + path +
                              " missing required fields: " + e.what());
    }
}

void write_signal_csv(const SignalWindow& window, const std::string& path) {
    auto out = open_out(path);
    out << "t,value,observed\n";
    for (long long t = window.start; t <= window.end; ++t) {
        out << t << ',' << fmt17(window.at(t)) << ','
            << (window.is_missing(t) ? 0 : 1) << '\n';
    }
}

SignalWindow read_signal_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value,observed", 0) != 0) {
        throw InvalidArgument("signal CSV " + path +
                              " must start with header t,value,observed");
    }
    std::map<long long, std::pair<double, bool>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string t_s, v_s, o_s;
        if (!std::getline(ss, t_s, ',') || !std::getline(ss, v_s, ',') ||
            !std::getline(ss, o_s)) {
            throw InvalidArgument(path + ":" + std::to_string(line_no) +
                                  ": expected t,value,observed");
        }
        try {
            const long long t = std::stoll(t_s);
            const double v = std::stod(v_s);
            const bool observed = std::stoi(o_s) != 0;
            if (!rows.emplace(t, std::make_pair(v, observed)).second) {
                throw InvalidArgument(path + ": duplicate index " + t_s);
            }
        } catch (const std::logic_error&) {
            throw InvalidArgument(path + ":" + std::to_string(line_no) +
                                  ": malformed row");
        }
    }
    if (rows.empty()) throw InvalidArgument(path + " holds no samples");
    const long long start = rows.begin()->first;
    const long long end = rows.rbegin()->first;
    if (end - start + 1 != static_cast<long long>(rows.size())) {
        throw InvalidArgument(path + " index range has gaps");
    }
    SignalWindow win;
    win.start = start;
    win.end = end;
    win.samples.reserve(rows.size());
    win.missing.reserve(rows.size());
    for (const auto& [t, row] : rows) {
        win.samples.push_back(row.first);
        win.missing.push_back(row.second ? 0 : 1);
    }
    return win;
}

void write_results_csv(const RecoveryResult& result, const SignalWindow* truth,
                       const std::string& path) {
    auto out = open_out(path);
    out << "t,estimate,truth,abs_error\n";
    for (std::size_t i = 0; i < result.indices.size(); ++i) {
        const long long t = result.indices[i];
        out << t << ',' << fmt17(result.estimates[i]) << ',';
        if (truth != nullptr && truth->contains(t)) {
            const double tv = truth->at(t);
            out << fmt17(tv) << ',' << fmt17(std::abs(result.estimates[i] - tv));
        } else {
            out << ',';
        }
        out << '\n';
    }
}

std::string report_to_json(const ExperimentReport& report) {
    json doc;
    doc["config"] = {{"missing", report.missing},
                     {"n", report.n},
                     {"N", report.cfg.N},
                     {"eps", report.cfg.eps_band},
                     {"nbar", report.cfg.nbar},
                     {"trials", report.cfg.trials},
                     {"seed", report.cfg.seed},
                     {"sigma", report.cfg.sigma}};
    doc["kernel"] = {{"kappa", report.kappa_value},
                     {"l1_mass", report.l1_mass_value},
                     {"w_norm", report.w_norm},
                     {"mask_set_size", report.mask_set_size}};
    doc["aggregate"] = {{"mean", report.mean},
                        {"median", report.median},
                        {"stderr", report.stderr_mean}};
    if (report.cfg.sigma > 0.0) {
        doc["robustness"] = {{"eps_hat", report.eps_hat},
                             {"bound", report.robustness}};
    }
    doc["trials"] = report.errors;
    doc["sup_errors"] = report.sup_errors;
    if (!report.noiseless_sup.empty()) {
        doc["noiseless_sup"] = report.noiseless_sup;
    }
    return doc.dump(2);
}

void write_report_json(const ExperimentReport& report, const std::string& path) {
    auto out = open_out(path);
    out << report_to_json(report) << '\n';
}

void write_report_csv(const ExperimentReport& report, const std::string& path) {
    auto out = open_out(path);
    const bool noisy = !report.noiseless_sup.empty();
    out << (noisy ? "trial,error,sup_error,noiseless_sup\n"
                  : "trial,error,sup_error\n");
    for (std::size_t i = 0; i < report.errors.size(); ++i) {
        out << i << ',' << fmt17(report.errors[i]) << ','
            << fmt17(report.sup_errors[i]);
        if (noisy) out << ',' << fmt17(report.noiseless_sup[i]);
        out << '\n';
    }
}

}  // namespace gapfill
