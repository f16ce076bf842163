#include "radwave/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "radwave/energy.hpp"
#include "radwave/estimates.hpp"
#include "radwave/reports.hpp"
#include "radwave/scattering.hpp"

namespace radwave {

namespace {

using json = nlohmann::ordered_json;

long parse_failing_step(const std::string& message) {
  long step = -1;
  const size_t pos = message.find("step ");
  if (pos != std::string::npos)
    std::sscanf(message.c_str() + pos, "step %ld", &step);
  return step;
}

std::string sanitize_cell(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return text;
}

struct SweepRow {
  std::vector<double> coordinates;
  bool ok = false;
  std::string message;
  double energy = 0.0;
  double final_inward = 0.0;
  double decay_slope = 0.0;
  bool has_slope = false;
  double kappa0 = 0.0;
  bool has_kappa0 = false;
  double defect = 0.0;
  bool has_defect = false;
  double morawetz_ratio = 0.0;
  bool has_morawetz = false;
};

RunConfig apply_point(RunConfig config, const std::vector<SweepAxis>& axes,
                      const std::vector<double>& coordinates) {
  for (size_t a = 0; a < axes.size(); ++a) {
    const double value = coordinates[a];
    const std::string& name = axes[a].name;
    if (name == "d")
      config.d = static_cast<int>(std::lround(value));
    else if (name == "p")
      config.p = value;
    else if (name == "kappa")
      config.kappa_list = {value};
    else if (name == "amplitude")
      config.initial.amplitude = value;
    else
      throw ConfigError("sweep axis \"" + name +
                        "\" is not one of d, p, kappa, amplitude");
  }
  return config;
}

SweepRow evaluate_point(const RunConfig& base,
                        const std::vector<SweepAxis>& axes,
                        const std::vector<double>& coordinates) {
  SweepRow row;
  row.coordinates = coordinates;
  try {
    const RunConfig config = apply_point(base, axes, coordinates);
    if (!config.bypass_admissibility && !admissible_model(config.d, config.p))
      throw ConfigError("(d, p) violates the standing assumption");
    SimulationResult result = run_simulation(config);
    const RunDiagnostics& diag = *result.diag;

    row.energy = diag.initial_energy();
    if (!diag.energy_series().empty())
      row.final_inward = diag.energy_series().back().inward;
    if (!config.kappa_list.empty() && diag.energy_series().size() >= 4) {
      const double kappa = config.kappa_list.front();
      const double e_kappa = weighted_energy(diag.initial_state(), diag.grid(),
                                             diag.params(), kappa);
      row.decay_slope = decay_fit(diag, kappa, e_kappa).fitted_slope;
      row.has_slope = true;
    }
    if (admissible_model(config.d, config.p)) {
      row.kappa0 = minimal_decay_rate(config.d, config.p);
      row.has_kappa0 = true;
    }
    if (diag.snapshots().size() >= 2) {
      row.defect = scatter_defect(diag, diag.snapshots()[0].requested_t,
                                  diag.snapshots()[1].requested_t);
      row.has_defect = true;
    }
    if (!diag.radius_traces().empty()) {
      const MorawetzReport rep =
          morawetz_inequality(diag, diag.radius_traces().front().radius);
      row.morawetz_ratio = rep.total / rep.bound;
      row.has_morawetz = true;
    }
    row.ok = true;
  } catch (const std::exception& error) {
    row.message = error.what();
  }
  return row;
}

}  // namespace

SimulationResult run_simulation(const RunConfig& config) {
  SimulationResult result;
  result.config = config;
  const ModelParams params = config.params();
  result.grid = resolve_grid(config);
  const DiagnosticsConfig dc = build_diagnostics(config, result.grid);

  SolverConfig solver;
  solver.cfl = config.grid.cfl;
  solver.t_final = config.t_final;
  solver.nonlinearity_on = config.nonlinearity_on;

  result.diag =
      std::make_shared<RunDiagnostics>(result.grid, params, solver, dc);
  Recorder* recorder = result.diag.get();
  result.report =
      evolve(config.initial, result.grid, params, solver, {&recorder, 1});
  return result;
}

std::filesystem::path simulate_to_directory(
    const RunConfig& config, const std::filesystem::path& output_root) {
  const std::filesystem::path dir = output_root / config.output_dir;
  try {
    const SimulationResult result = run_simulation(config);
    write_reports(dir, config, *result.diag, result.report);
  } catch (const ConfigError&) {
    throw;  // nothing ran; no manifest to write
  } catch (const std::exception& error) {
    write_failure_manifest(dir, config, error.what(),
                           parse_failing_step(error.what()));
    throw;
  }
  return dir;
}

int sweep_to_csv(const RunConfig& base, const std::vector<SweepAxis>& axes,
                 unsigned workers, const std::filesystem::path& out_path) {
  if (axes.empty()) throw ConfigError("sweep needs at least one axis");
  for (const SweepAxis& axis : axes)
    if (axis.values.empty())
      throw ConfigError("sweep axis \"" + axis.name + "\" has no values");

  size_t total = 1;
  for (const SweepAxis& axis : axes) total *= axis.values.size();

  std::vector<std::vector<double>> points(total);
  for (size_t index = 0; index < total; ++index) {
    std::vector<double> coordinates(axes.size());
    size_t rest = index;
    for (size_t a = axes.size(); a-- > 0;) {
      coordinates[a] = axes[a].values[rest % axes[a].values.size()];
      rest /= axes[a].values.size();
    }
    points[index] = std::move(coordinates);
  }

  std::vector<SweepRow> rows(total);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<size_t>(workers, total));

  std::mutex queue_mutex;
  size_t next = 0;
  auto work = [&]() {
    for (;;) {
      size_t index;
      {
        std::lock_guard<std::mutex> lock(queue_mutex);
        if (next >= total) return;
        index = next++;
      }
      rows[index] = evaluate_point(base, axes, points[index]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& thread : pool) thread.join();
  }

  if (out_path.has_parent_path())
    std::filesystem::create_directories(out_path.parent_path());
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path.string());
  out << "index";
  for (const SweepAxis& axis : axes) out << ',' << axis.name;
  out << ",energy,final_inward,decay_slope,kappa0,defect,morawetz_ratio,"
         "status,message\n";
  int failures = 0;
  for (size_t index = 0; index < total; ++index) {
    const SweepRow& row = rows[index];
    out << index;
    for (double c : row.coordinates) out << ',' << format_number(c);
    auto cell = [&](bool has, double value) {
      out << ',';
      if (has) out << format_number(value);
    };
    cell(row.ok, row.energy);
    cell(row.ok, row.final_inward);
    cell(row.ok && row.has_slope, row.decay_slope);
    cell(row.has_kappa0, row.kappa0);
    cell(row.ok && row.has_defect, row.defect);
    cell(row.ok && row.has_morawetz, row.morawetz_ratio);
    out << ',' << (row.ok ? "ok" : "error") << ','
        << sanitize_cell(row.message) << "\n";
    if (!row.ok) ++failures;
  }
  return failures;
}

void report_directory(const std::filesystem::path& dir, std::ostream& out) {
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in)
    throw std::runtime_error("no manifest.json under " + dir.string());
  std::ostringstream buffer;
  buffer << manifest_in.rdbuf();
  const RunConfig config = parse_config_text(buffer.str());

  const CsvTable energies = read_csv(dir / "energies.csv");
  const std::vector<double>& t = energies.column("t");
  const std::vector<double>& total = energies.column("total");
  const std::vector<double>& inward = energies.column("inward");
  const std::vector<double>& outward = energies.column("outward");
  if (t.empty()) throw std::runtime_error("energies.csv has no rows");

  json report;
  const double e0 = total.front();
  double drift = 0.0, split = 0.0;
  for (size_t k = 0; k < t.size(); ++k) {
    drift = std::max(drift, std::abs(total[k] - e0));
    split = std::max(split, std::abs(inward[k] + outward[k] - total[k]));
  }
  report["energy"] = e0;
  report["max_drift"] = drift / e0;
  report["max_split_residual"] = split / e0;
  out << "energy " << format_number(e0) << "\n";
  out << "max relative drift " << format_number(drift / e0) << "\n";
  out << "max split residual " << format_number(split / e0) << "\n";

  json fits = json::array();
  if (!config.kappa_list.empty()) {
    // Weighted energies come from the stored decay table; the fit itself is
    // recomputed from the energy series.
    json stored;
    std::ifstream decay_in(dir / "decay.json");
    if (decay_in) stored = json::parse(decay_in, nullptr, false);
    for (double kappa : config.kappa_list) {
      json entry;
      entry["kappa"] = kappa;
      double e_kappa = 0.0;
      if (stored.is_array())
        for (const json& item : stored)
          if (item.contains("kappa") &&
              std::abs(item["kappa"].get<double>() - kappa) <= 1e-12 &&
              item.contains("weighted_energy"))
            e_kappa = item["weighted_energy"].get<double>();
      if (e_kappa > 0.0 && t.size() >= 4) {
        const DecayFit fit = decay_fit(t, inward, kappa, e_kappa);
        entry["fitted_slope"] = fit.fitted_slope;
        entry["sup_constant"] = fit.bound_constant;
        entry["truncated_norm"] = fit.truncated_norm;
        out << "kappa " << label_number(kappa) << ": slope "
            << format_number(fit.fitted_slope) << ", sup constant "
            << format_number(fit.bound_constant) << "\n";
      } else {
        entry["error"] = "no stored weighted energy";
      }
      fits.push_back(std::move(entry));
    }
  }
  report["decay_fits"] = std::move(fits);

  std::ofstream report_out(dir / "report.json", std::ios::binary);
  if (!report_out)
    throw std::runtime_error("cannot write " + (dir / "report.json").string());
  report_out << report.dump(2) << "\n";
}

}  // namespace radwave
