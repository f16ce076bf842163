#pragma once
/// JSON run configuration: parsing with field-level error messages, grid
/// resolution under the causal-padding rule, and assembly of the
/// diagnostics recorder setup.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "radwave/diagnostics.hpp"
#include "radwave/grid.hpp"
#include "radwave/mathlib.hpp"
#include "radwave/solver.hpp"
#include "radwave/weights.hpp"

namespace radwave {

/// Raised on malformed or inconsistent configs; the message names the
/// offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  bool auto_r_max = true;
  double r_max = 0.0;  // used when auto_r_max is false
  Eigen::Index cells = 4096;
  double cfl = 0.8;
};

struct RegionSpec {
  std::string id;
  std::vector<std::array<double, 2>> vertices;  // (r, t) loop
};

struct RunConfig {
  int d = 3;
  double p = 3.0;
  bool bypass_admissibility = false;
  bool nonlinearity_on = true;

  InitialData initial;
  GridSpec grid;
  double t_final = 20.0;
  long stride = 10;

  bool energies = true;
  std::vector<double> cone_taus;  // forward cones t - r = tau
  std::vector<double> cone_ss;    // backward cones t + r = s
  std::vector<RegionSpec> regions;
  std::vector<double> morawetz_radii;
  std::vector<WeightSpec> weights;
  std::vector<double> kappa_list;        // decay-fit exponents
  std::vector<double> scattering_times;  // snapshot times for pull-backs
  std::vector<double> interior_speeds;
  std::vector<double> norm_exponents;  // extra spatial norms to trace

  std::string output_dir = "out";

  /// Checked model unless the bypass flag is set.
  ModelParams params() const;
};

/// Parses and validates a JSON config document.  Accepts either a plain
/// config object or a manifest wrapping one under "config".
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical JSON echo of a config (used by the manifest; parsing it back
/// reproduces the config exactly).
std::string config_to_json(const RunConfig& config);

/// Resolves the grid.  Auto mode pads the initial support so neither the
/// forward run nor any scattering pull-back can see the outer wall.
RadialGrid resolve_grid(const RunConfig& config);

/// Builds the recorder configuration; snapshot times are snapped onto the
/// step lattice of the resolved grid.
DiagnosticsConfig build_diagnostics(const RunConfig& config,
                                    const RadialGrid& grid);

}  // namespace radwave
