#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "thermoac/config_file.hpp"
#include "thermoac/studies.hpp"

namespace thermoac {

/// Deterministic float formatting used in every CSV cell: scientific notation
/// with 17 significant digits, locale-independent.
std::string format_float(double x);

void write_probes_csv(std::ostream& out, const ProbeSeries& probes);
void write_snapshot_csv(std::ostream& out, const Snapshot& snap);
void write_ledger_csv(std::ostream& out, const LedgerSeries& ledger);
void write_summary_csv(std::ostream& out, const RunResult& result);

/// Writes probes.csv, ledger.csv, summary.csv and one snapshot_<t>.csv per
/// requested snapshot time under out_dir (created if needed).
void write_run_outputs(const std::filesystem::path& out_dir, const SimulationConfig& cfg,
                       const RunResult& result);

void write_orders_csv(std::ostream& out, const ConvergenceResult& result);
void write_l2_errors_csv(std::ostream& out, const ConvergenceResult& result);
void write_deviations_csv(std::ostream& out, const GridStudyResult& result);
void write_dispersion_csv(std::ostream& out, const CompareResult& result);

}  // namespace thermoac
