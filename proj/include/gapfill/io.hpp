#pragma once

// File formats: kernel JSON, signal CSV, results CSV, experiment report
// JSON/CSV. Doubles are written with 17 significant digits so every value
// round-trips bit-exactly.

#include <string>

#include "gapfill/kernel.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/signal_lab.hpp"

namespace gapfill {

void write_kernel_json(const RecoveryKernel& kernel, const std::string& path,
                       bool include_taps = true);

// Rebuilds the kernel from {T, n, tap_radius}; taps stored in the file are
// authoritative for the masked table when present.
RecoveryKernel read_kernel_json(const std::string& path);

// Columns: t,value,observed(0|1). Rows must form a contiguous index range.
void write_signal_csv(const SignalWindow& window, const std::string& path);
SignalWindow read_signal_csv(const std::string& path);

// Columns: t,estimate,truth,abs_error. Truth columns are blank when no truth
// window is supplied.
void write_results_csv(const RecoveryResult& result, const SignalWindow* truth,
                       const std::string& path);

std::string report_to_json(const ExperimentReport& report);
void write_report_json(const ExperimentReport& report, const std::string& path);

// One row per trial: trial,error plus the sup-error columns when noise was
// injected.
void write_report_csv(const ExperimentReport& report, const std::string& path);

}  // namespace gapfill
