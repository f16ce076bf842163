#include "radwave/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "radwave/energy.hpp"
#include "radwave/estimates.hpp"
#include "radwave/flux.hpp"
#include "radwave/scattering.hpp"

namespace radwave {

namespace {

using json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

/// Cumulative integral of the squared origin amplitude sampled at the given
/// times (which must be a subset of the amplitude's step lattice).
std::vector<double> mu_prefix(const ScalarSeries& axis,
                              const std::vector<double>& at) {
  std::vector<double> out(at.size(), 0.0);
  if (axis.t.size() < 2) return out;
  size_t i = 0;
  double acc = 0.0;
  auto sq = [&](size_t k) { return axis.value[k] * axis.value[k]; };
  for (size_t q = 0; q < at.size(); ++q) {
    while (i + 1 < axis.t.size() && axis.t[i + 1] <= at[q] + 1e-12) {
      acc += 0.5 * (sq(i) + sq(i + 1)) * (axis.t[i + 1] - axis.t[i]);
      ++i;
    }
    out[q] = acc;
  }
  return out;
}

void write_energies_csv(const std::filesystem::path& path,
                        const RunDiagnostics& diag) {
  const auto& records = diag.energy_series();
  std::ofstream out = open_out(path);
  out << "t,total,inward,outward,kinetic,radial_gradient,potential,hardy,"
         "mu_cumulative";
  for (const InteriorTrace& trace : diag.interior_traces())
    out << ",interior_c" << label_number(trace.speed);
  out << "\n";

  std::vector<double> times;
  times.reserve(records.size());
  for (const EnergyRecord& rec : records) times.push_back(rec.t);
  const std::vector<double> mu = mu_prefix(diag.axis_amplitude(), times);

  for (size_t k = 0; k < records.size(); ++k) {
    const EnergyRecord& rec = records[k];
    out << format_number(rec.t) << ',' << format_number(rec.total) << ','
        << format_number(rec.inward) << ',' << format_number(rec.outward)
        << ',' << format_number(rec.kinetic) << ','
        << format_number(rec.radial_gradient) << ','
        << format_number(rec.potential) << ',' << format_number(rec.hardy)
        << ',' << format_number(mu[k]);
    for (const InteriorTrace& trace : diag.interior_traces())
      out << ',' << format_number(k < trace.series.value.size()
                                      ? trace.series.value[k]
                                      : 0.0);
    out << "\n";
  }
}

void write_regions_csv(const std::filesystem::path& path,
                       const RunDiagnostics& diag) {
  std::ofstream out = open_out(path);
  out << "region_id,type,segments,boundary_sum,mu_term,morawetz_integral,"
         "residual\n";
  for (const RegionTrace& trace : diag.region_traces()) {
    for (EnergyType type : {EnergyType::inward, EnergyType::outward}) {
      const FluxLedger ledger = flux_balance(trace.region, diag, type);
      double boundary = 0.0;
      for (const auto& [segment, value] : ledger.per_segment)
        boundary += value;
      out << ledger.region_id << ',' << to_string(type) << ','
          << ledger.per_segment.size() << ',' << format_number(boundary)
          << ',' << format_number(ledger.mu_term) << ','
          << format_number(ledger.morawetz_integral) << ','
          << format_number(ledger.residual) << "\n";
    }
  }
}

void write_cones_csv(const std::filesystem::path& path,
                     const RunDiagnostics& diag) {
  std::ofstream out = open_out(path);
  out << "cone,offset,intersects,q_inward,q_outward,q_sum,energy\n";
  const ConeFluxSeries series = cone_fluxes(diag);
  for (const auto& entry : series.entries)
    out << (entry.forward ? "forward" : "backward") << ','
        << format_number(entry.offset) << ',' << (entry.intersects ? 1 : 0)
        << ',' << format_number(entry.q_inward) << ','
        << format_number(entry.q_outward) << ','
        << format_number(entry.q_inward + entry.q_outward) << ','
        << format_number(series.energy) << "\n";
}

void write_morawetz_csv(const std::filesystem::path& path,
                        const RunDiagnostics& diag) {
  std::ofstream out = open_out(path);
  out << "R,interior,sphere,exterior,total,bound,bulk_ratio,interior_ratio,"
         "sphere_ratio\n";
  for (const RadiusTrace& trace : diag.radius_traces()) {
    const MorawetzReport rep = morawetz_inequality(diag, trace.radius);
    const GlobalBulkIntegrals cor =
        unweighted_global_integrals(diag, trace.radius);
    out << format_number(trace.radius) << ','
        << format_number(rep.interior_term) << ','
        << format_number(rep.sphere_term) << ','
        << format_number(rep.exterior_term) << ',' << format_number(rep.total)
        << ',' << format_number(rep.bound) << ','
        << format_number(cor.bulk_ratio) << ','
        << format_number(cor.interior_ratio) << ','
        << format_number(cor.sphere_ratio) << "\n";
  }
}

void write_weighted_csv(const std::filesystem::path& path,
                        const RunDiagnostics& diag) {
  std::ofstream out = open_out(path);
  out << "weight,gamma,lhs,mu_weighted,origin_term,k1\n";
  const double c_d = origin_flux_constant(diag.grid().d);
  for (const WeightTrace& trace : diag.weight_traces()) {
    const WeightedMorawetz rep = weighted_morawetz(diag, trace.weight);
    out << trace.weight.label() << ',' << format_number(trace.weight.gamma)
        << ',' << format_number(rep.lhs) << ','
        << format_number(rep.mu_weighted) << ','
        << format_number(c_d * rep.mu_weighted) << ','
        << format_number(rep.k1) << "\n";
  }
}

json decay_report(const RunConfig& config, const RunDiagnostics& diag) {
  json entries = json::array();
  for (double kappa : config.kappa_list) {
    json entry;
    entry["kappa"] = kappa;
    try {
      const double e_kappa = weighted_energy(diag.initial_state(),
                                             diag.grid(), diag.params(), kappa);
      const DecayFit fit = decay_fit(diag, kappa, e_kappa);
      entry["weighted_energy"] = e_kappa;
      entry["sup_constant"] = fit.bound_constant;
      entry["fitted_slope"] = fit.fitted_slope;
      entry["fit_residual"] = fit.fit_residual;
      entry["truncated_norm"] = fit.truncated_norm;
      entry["dropped_nonpositive"] = fit.dropped_nonpositive;
    } catch (const std::exception& error) {
      entry["error"] = error.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

json scattering_report(const RunConfig& config, const RunDiagnostics& diag,
                       std::vector<std::string>& outputs,
                       const std::filesystem::path& dir) {
  json report;
  json snapshots = json::array();
  std::vector<double> good_times;
  for (const Snapshot& snap : diag.snapshots()) {
    json entry;
    entry["t"] = snap.requested_t;
    try {
      const ScatterProfile profile = extract_profile(diag, snap.requested_t);
      entry["energy_norm"] = profile.energy_norm;
      good_times.push_back(snap.requested_t);
    } catch (const std::exception& error) {
      entry["error"] = error.what();
    }
    const std::string name =
        "snapshot_t" + label_number(snap.requested_t) + ".csv";
    std::ofstream csv = open_out(dir / name);
    csv << "r,u,v\n";
    for (Eigen::Index j = 0; j < diag.grid().n; ++j)
      csv << format_number(diag.grid().center(j)) << ','
          << format_number(snap.state.u(j)) << ','
          << format_number(snap.state.v(j)) << "\n";
    outputs.push_back(name);
    entry["file"] = name;
    snapshots.push_back(std::move(entry));
  }
  report["snapshots"] = std::move(snapshots);

  json defects = json::array();
  for (size_t k = 0; k + 1 < good_times.size(); ++k) {
    json entry;
    entry["t1"] = good_times[k];
    entry["t2"] = good_times[k + 1];
    entry["defect"] = scatter_defect(diag, good_times[k], good_times[k + 1]);
    defects.push_back(std::move(entry));
  }
  report["defects"] = std::move(defects);

  json norms = json::array();
  if (!config.scattering_times.empty()) {
    const StrichartzPair s = s_pair(config.d, config.p);
    const StrichartzPair w = w_pair(config.d);
    for (const auto& [label, pair] :
         {std::pair<const char*, StrichartzPair>{"nonlinear-control", s},
          std::pair<const char*, StrichartzPair>{"half-regularity", w}}) {
      json entry;
      entry["label"] = label;
      entry["q"] = pair.q;
      entry["r"] = pair.r;
      try {
        entry["value"] = spacetime_norm(diag, pair.q, pair.r, diag.t_begin(),
                                        diag.t_end());
      } catch (const std::exception& error) {
        entry["error"] = error.what();
      }
      norms.push_back(std::move(entry));
    }
  }
  report["spacetime_norms"] = std::move(norms);

  json interiors = json::array();
  for (const InteriorTrace& trace : diag.interior_traces()) {
    json entry;
    entry["speed"] = trace.speed;
    entry["final"] =
        trace.series.value.empty() ? 0.0 : trace.series.value.back();
    entry["max"] = max_series(trace.series, diag.t_begin(), diag.t_end());
    interiors.push_back(std::move(entry));
  }
  report["interior_energies"] = std::move(interiors);
  return report;
}

json resolved_block(const RunConfig& config, const RunDiagnostics& diag,
                    const RunReport& report) {
  const RadialGrid& grid = diag.grid();
  json resolved;
  resolved["r_max"] = grid.r_max();
  resolved["h"] = grid.h;
  resolved["cells"] = grid.n;
  resolved["dt"] = report.dt;
  resolved["steps"] = report.steps;
  resolved["t_begin"] = diag.t_begin();
  resolved["t_end"] = diag.t_end();
  resolved["support_radius"] = config.initial.support_radius();
  resolved["total_energy"] = diag.initial_energy();
  json snaps = json::array();
  for (const Snapshot& snap : diag.snapshots())
    snaps.push_back(snap.requested_t);
  resolved["snapshot_times"] = std::move(snaps);
  return resolved;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

std::string label_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

void write_reports(const std::filesystem::path& dir, const RunConfig& config,
                   const RunDiagnostics& diag, const RunReport& report) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;

  write_energies_csv(dir / "energies.csv", diag);
  outputs.push_back("energies.csv");
  write_regions_csv(dir / "regions.csv", diag);
  outputs.push_back("regions.csv");
  write_cones_csv(dir / "cones.csv", diag);
  outputs.push_back("cones.csv");
  write_morawetz_csv(dir / "morawetz.csv", diag);
  outputs.push_back("morawetz.csv");
  write_weighted_csv(dir / "weighted.csv", diag);
  outputs.push_back("weighted.csv");

  {
    std::ofstream out = open_out(dir / "decay.json");
    out << decay_report(config, diag).dump(2) << "\n";
    outputs.push_back("decay.json");
  }
  {
    const json scatter = scattering_report(config, diag, outputs, dir);
    std::ofstream out = open_out(dir / "scattering.json");
    out << scatter.dump(2) << "\n";
    outputs.push_back("scattering.json");
  }

  json manifest;
  manifest["code_version"] = kCodeVersion;
  manifest["status"] = "ok";
  manifest["config"] = json::parse(config_to_json(config));
  manifest["resolved"] = resolved_block(config, diag, report);
  manifest["outputs"] = outputs;
  std::ofstream out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
}

void write_failure_manifest(const std::filesystem::path& dir,
                            const RunConfig& config, const std::string& error,
                            long failing_step) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["code_version"] = kCodeVersion;
  manifest["status"] = "error";
  manifest["error"] = error;
  manifest["failing_step"] = failing_step;
  manifest["config"] = json::parse(config_to_json(config));
  std::ofstream out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return columns[k];
  throw std::invalid_argument("csv has no column named " + name);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path.string() + " is empty");
  std::stringstream head(line);
  std::string cell;
  while (std::getline(head, cell, ',')) table.header.push_back(cell);
  table.columns.resize(table.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    size_t k = 0;
    while (std::getline(row, cell, ',') && k < table.columns.size()) {
      double value = 0.0;
      const auto result =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      table.columns[k].push_back(result.ec == std::errc() ? value : 0.0);
      ++k;
    }
  }
  return table;
}

}  // namespace radwave
