#pragma once
/// Run artifact emission: CSV tables and JSON summaries.  All numbers are
/// written locale-independently with 17 significant digits, so identical
/// runs produce byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

#include "radwave/diagnostics.hpp"
#include "radwave/run_config.hpp"
#include "radwave/solver.hpp"

namespace radwave {

inline constexpr const char* kCodeVersion = "0.3.1";

/// Shortest-faithful decimal form with up to 17 significant digits.
std::string format_number(double value);

/// Compact %g form for labels (column names, file suffixes).
std::string label_number(double value);

/// Writes every report of a finished run into dir (created if needed):
/// energies.csv, regions.csv, cones.csv, morawetz.csv, weighted.csv,
/// decay.json, scattering.json, snapshots and manifest.json.
void write_reports(const std::filesystem::path& dir, const RunConfig& config,
                   const RunDiagnostics& diag, const RunReport& report);

/// Manifest for a run that aborted mid-flight; records the failing step.
void write_failure_manifest(const std::filesystem::path& dir,
                            const RunConfig& config, const std::string& error,
                            long failing_step);

/// Column-major CSV with a header row; used by the report subcommand to
/// re-derive estimates from stored tables.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace radwave
