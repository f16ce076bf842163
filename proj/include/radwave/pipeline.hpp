#pragma once
/// Run orchestration: single simulations with full diagnostics, parallel
/// parameter sweeps with deterministic aggregation, and re-derivation of
/// estimates from a stored run directory.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "radwave/diagnostics.hpp"
#include "radwave/run_config.hpp"
#include "radwave/solver.hpp"

namespace radwave {

struct SimulationResult {
  RunConfig config;
  RadialGrid grid;
  std::shared_ptr<RunDiagnostics> diag;
  RunReport report;
};

/// Runs one configured simulation; no files are written.
SimulationResult run_simulation(const RunConfig& config);

/// Runs and writes the full report set into output_root / config.output_dir;
/// on a mid-run failure writes a manifest naming the failing step and
/// rethrows.  Returns the run directory.
std::filesystem::path simulate_to_directory(
    const RunConfig& config, const std::filesystem::path& output_root);

struct SweepAxis {
  std::string name;  // one of "d", "p", "kappa", "amplitude"
  std::vector<double> values;
};

/// Cartesian sweep over the axes (last axis fastest).  Points run in a
/// worker pool; aggregation order is the point order, independent of
/// scheduling.  Failed points are recorded and the sweep continues.
/// Returns the number of failed points.
int sweep_to_csv(const RunConfig& base, const std::vector<SweepAxis>& axes,
                 unsigned workers, const std::filesystem::path& out_path);

/// Re-derives decay fits and conservation summaries from the stored tables
/// of a run directory; writes report.json there and prints one line per
/// derived quantity.
void report_directory(const std::filesystem::path& dir, std::ostream& out);

}  // namespace radwave
