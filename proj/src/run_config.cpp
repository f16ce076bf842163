#include "radwave/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace radwave {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

const json* get(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void expect_object(const json& value, const std::string& field) {
  if (!value.is_object()) fail(field, "must be an object");
}

double as_number(const json& value, const std::string& field) {
  if (!value.is_number()) fail(field, "must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

int as_int(const json& value, const std::string& field) {
  if (!value.is_number_integer()) fail(field, "must be an integer");
  return value.get<int>();
}

bool as_bool(const json& value, const std::string& field) {
  if (!value.is_boolean()) fail(field, "must be a boolean");
  return value.get<bool>();
}

std::string as_string(const json& value, const std::string& field) {
  if (!value.is_string()) fail(field, "must be a string");
  return value.get<std::string>();
}

std::vector<double> as_number_list(const json& value,
                                   const std::string& field) {
  if (!value.is_array()) fail(field, "must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (size_t i = 0; i < value.size(); ++i)
    out.push_back(as_number(value[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const json& obj, const std::string& field,
                    std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(field + "." + item.key(), "unknown field");
  }
}

ProfileKind parse_kind(const std::string& name, const std::string& field) {
  if (name == "gaussian") return ProfileKind::gaussian;
  if (name == "bump") return ProfileKind::compact_bump;
  if (name == "ring") return ProfileKind::ring;
  fail(field, "must be one of \"gaussian\", \"bump\", \"ring\"");
}

VelocityProfile parse_velocity(const std::string& name,
                               const std::string& field) {
  if (name == "zero") return VelocityProfile::zero;
  if (name == "time-symmetric") return VelocityProfile::time_symmetric;
  if (name == "outgoing") return VelocityProfile::outgoing;
  fail(field, "must be one of \"zero\", \"time-symmetric\", \"outgoing\"");
}

std::string kind_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::gaussian:
      return "gaussian";
    case ProfileKind::compact_bump:
      return "bump";
    case ProfileKind::ring:
      return "ring";
  }
  return "bump";
}

std::string velocity_name(VelocityProfile profile) {
  switch (profile) {
    case VelocityProfile::zero:
      return "zero";
    case VelocityProfile::time_symmetric:
      return "time-symmetric";
    case VelocityProfile::outgoing:
      return "outgoing";
  }
  return "zero";
}

WeightSpec parse_weight(const json& value, const std::string& field) {
  expect_object(value, field);
  reject_unknown(value, field, {"kind", "kappa", "radii", "values", "gamma"});
  const json* kind = get(value, "kind");
  if (kind == nullptr) fail(field + ".kind", "is required");
  const std::string name = as_string(*kind, field + ".kind");
  WeightSpec spec;
  if (name == "power") {
    const json* kappa = get(value, "kappa");
    if (kappa == nullptr) fail(field + ".kappa", "is required");
    spec = WeightSpec::power(as_number(*kappa, field + ".kappa"));
  } else if (name == "table") {
    const json* radii = get(value, "radii");
    const json* values = get(value, "values");
    const json* gamma = get(value, "gamma");
    if (radii == nullptr || values == nullptr)
      fail(field, "table weight needs \"radii\" and \"values\"");
    spec = WeightSpec::table(
        as_number_list(*radii, field + ".radii"),
        as_number_list(*values, field + ".values"),
        gamma != nullptr ? as_number(*gamma, field + ".gamma") : 1.0);
  } else {
    fail(field + ".kind", "must be \"power\" or \"table\"");
  }
  try {
    spec.validate();
  } catch (const std::exception& error) {
    fail(field, error.what());
  }
  return spec;
}

RunConfig parse_document(const json& doc) {
  expect_object(doc, "config");
  // A manifest wraps the config it was produced from.
  if (const json* inner = get(doc, "config")) return parse_document(*inner);

  reject_unknown(doc, "config",
                 {"model", "initial", "grid", "time", "diagnostics",
                  "output_dir"});
  RunConfig config;

  if (const json* model = get(doc, "model")) {
    expect_object(*model, "model");
    reject_unknown(*model, "model",
                   {"d", "p", "nonlinearity", "bypass_admissibility"});
    if (const json* d = get(*model, "d")) config.d = as_int(*d, "model.d");
    if (const json* p = get(*model, "p")) config.p = as_number(*p, "model.p");
    if (const json* flag = get(*model, "nonlinearity"))
      config.nonlinearity_on = as_bool(*flag, "model.nonlinearity");
    if (const json* flag = get(*model, "bypass_admissibility"))
      config.bypass_admissibility =
          as_bool(*flag, "model.bypass_admissibility");
  }
  if (config.d < 2 || config.d > 9) fail("model.d", "must lie in [2, 9]");
  if (!(config.p > 1.0)) fail("model.p", "must exceed 1");
  if (!config.bypass_admissibility && !admissible_model(config.d, config.p)) {
    std::ostringstream msg;
    msg << "(d, p) = (" << config.d << ", " << config.p
        << ") violates the standing assumption on the model; set "
           "model.bypass_admissibility to run anyway";
    fail("model", msg.str());
  }

  if (const json* initial = get(doc, "initial")) {
    expect_object(*initial, "initial");
    reject_unknown(*initial, "initial",
                   {"kind", "amplitude", "center", "width", "velocity"});
    if (const json* kind = get(*initial, "kind"))
      config.initial.kind =
          parse_kind(as_string(*kind, "initial.kind"), "initial.kind");
    if (const json* amp = get(*initial, "amplitude"))
      config.initial.amplitude = as_number(*amp, "initial.amplitude");
    if (const json* center = get(*initial, "center"))
      config.initial.center = as_number(*center, "initial.center");
    if (const json* width = get(*initial, "width"))
      config.initial.width = as_number(*width, "initial.width");
    if (const json* vel = get(*initial, "velocity"))
      config.initial.velocity = parse_velocity(
          as_string(*vel, "initial.velocity"), "initial.velocity");
  }
  if (!(config.initial.width > 0.0)) fail("initial.width", "must be positive");
  if (config.initial.center < 0.0)
    fail("initial.center", "must be nonnegative");

  if (const json* grid = get(doc, "grid")) {
    expect_object(*grid, "grid");
    reject_unknown(*grid, "grid", {"r_max", "cells", "cfl"});
    if (const json* r_max = get(*grid, "r_max")) {
      if (r_max->is_string()) {
        if (r_max->get<std::string>() != "auto")
          fail("grid.r_max", "must be a positive number or \"auto\"");
        config.grid.auto_r_max = true;
      } else {
        config.grid.auto_r_max = false;
        config.grid.r_max = as_number(*r_max, "grid.r_max");
        if (!(config.grid.r_max > 0.0))
          fail("grid.r_max", "must be positive");
      }
    }
    if (const json* cells = get(*grid, "cells"))
      config.grid.cells = as_int(*cells, "grid.cells");
    if (const json* cfl = get(*grid, "cfl"))
      config.grid.cfl = as_number(*cfl, "grid.cfl");
  }
  if (config.grid.cells < 16) fail("grid.cells", "must be at least 16");
  if (!(config.grid.cfl > 0.0 && config.grid.cfl <= 1.0))
    fail("grid.cfl", "must lie in (0, 1]");
  const double cfl_cap = 2.0 / std::sqrt(config.d + 1.0);
  if (config.grid.cfl > cfl_cap) {
    std::ostringstream msg;
    msg << "must not exceed 2/sqrt(d + 1) = " << cfl_cap
        << " (axis cell stability in d = " << config.d << ")";
    fail("grid.cfl", msg.str());
  }

  if (const json* time = get(doc, "time")) {
    expect_object(*time, "time");
    reject_unknown(*time, "time", {"t_final", "diagnostic_stride"});
    if (const json* t_final = get(*time, "t_final"))
      config.t_final = as_number(*t_final, "time.t_final");
    if (const json* stride = get(*time, "diagnostic_stride"))
      config.stride = as_int(*stride, "time.diagnostic_stride");
  }
  if (!(config.t_final > 0.0)) fail("time.t_final", "must be positive");
  if (config.stride < 1) fail("time.diagnostic_stride", "must be >= 1");

  if (const json* diags = get(doc, "diagnostics")) {
    expect_object(*diags, "diagnostics");
    reject_unknown(*diags, "diagnostics",
                   {"energies", "cones", "regions", "morawetz_R", "weights",
                    "kappa_list", "scattering_T_list", "interior_c_list",
                    "norm_exponents"});
    if (const json* flag = get(*diags, "energies"))
      config.energies = as_bool(*flag, "diagnostics.energies");
    if (const json* cones = get(*diags, "cones")) {
      expect_object(*cones, "diagnostics.cones");
      reject_unknown(*cones, "diagnostics.cones", {"taus", "ss"});
      if (const json* taus = get(*cones, "taus"))
        config.cone_taus = as_number_list(*taus, "diagnostics.cones.taus");
      if (const json* ss = get(*cones, "ss"))
        config.cone_ss = as_number_list(*ss, "diagnostics.cones.ss");
    }
    if (const json* regions = get(*diags, "regions")) {
      if (!regions->is_array())
        fail("diagnostics.regions", "must be an array");
      for (size_t i = 0; i < regions->size(); ++i) {
        const std::string field =
            "diagnostics.regions[" + std::to_string(i) + "]";
        const json& entry = (*regions)[i];
        expect_object(entry, field);
        reject_unknown(entry, field, {"id", "vertices"});
        RegionSpec spec;
        const json* id = get(entry, "id");
        spec.id = id != nullptr ? as_string(*id, field + ".id")
                                : "region-" + std::to_string(i);
        const json* vertices = get(entry, "vertices");
        if (vertices == nullptr || !vertices->is_array())
          fail(field + ".vertices", "must be an array of [r, t] pairs");
        for (size_t k = 0; k < vertices->size(); ++k) {
          const json& vertex = (*vertices)[k];
          const std::string vfield =
              field + ".vertices[" + std::to_string(k) + "]";
          if (!vertex.is_array() || vertex.size() != 2)
            fail(vfield, "must be an [r, t] pair");
          spec.vertices.push_back({as_number(vertex[0], vfield + "[0]"),
                                   as_number(vertex[1], vfield + "[1]")});
        }
        if (spec.vertices.size() < 3)
          fail(field + ".vertices", "needs at least 3 vertices");
        config.regions.push_back(std::move(spec));
      }
    }
    if (const json* radii = get(*diags, "morawetz_R"))
      config.morawetz_radii =
          as_number_list(*radii, "diagnostics.morawetz_R");
    if (const json* weights = get(*diags, "weights")) {
      if (!weights->is_array()) fail("diagnostics.weights", "must be an array");
      for (size_t i = 0; i < weights->size(); ++i)
        config.weights.push_back(parse_weight(
            (*weights)[i], "diagnostics.weights[" + std::to_string(i) + "]"));
    }
    if (const json* kappas = get(*diags, "kappa_list"))
      config.kappa_list = as_number_list(*kappas, "diagnostics.kappa_list");
    if (const json* times = get(*diags, "scattering_T_list"))
      config.scattering_times =
          as_number_list(*times, "diagnostics.scattering_T_list");
    if (const json* speeds = get(*diags, "interior_c_list"))
      config.interior_speeds =
          as_number_list(*speeds, "diagnostics.interior_c_list");
    if (const json* exps = get(*diags, "norm_exponents"))
      config.norm_exponents =
          as_number_list(*exps, "diagnostics.norm_exponents");
  }
  for (double kappa : config.kappa_list)
    if (!(kappa > 0.0 && kappa < 1.0))
      fail("diagnostics.kappa_list", "entries must lie in (0, 1)");
  for (double R : config.morawetz_radii)
    if (!(R > 0.0)) fail("diagnostics.morawetz_R", "entries must be positive");
  for (double T : config.scattering_times)
    if (!(T > 0.0 && T <= config.t_final))
      fail("diagnostics.scattering_T_list",
           "entries must lie in (0, t_final]");
  for (double c : config.interior_speeds)
    if (!(c > 0.0)) fail("diagnostics.interior_c_list",
                         "entries must be positive");
  for (double r : config.norm_exponents)
    if (!(r >= 1.0)) fail("diagnostics.norm_exponents",
                          "entries must be at least 1");

  if (const json* dir = get(doc, "output_dir"))
    config.output_dir = as_string(*dir, "output_dir");
  if (config.output_dir.empty()) fail("output_dir", "must be nonempty");

  return config;
}

json weight_to_json(const WeightSpec& spec) {
  json out;
  if (spec.kind == WeightSpec::Kind::power) {
    out["kind"] = "power";
    out["kappa"] = spec.kappa;
  } else {
    out["kind"] = "table";
    out["radii"] = spec.radii;
    out["values"] = spec.values;
    out["gamma"] = spec.gamma;
  }
  return out;
}

}  // namespace

ModelParams RunConfig::params() const {
  return bypass_admissibility ? ModelParams::unchecked(d, p)
                              : ModelParams::checked(d, p);
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ConfigError(std::string("config is not valid JSON: ") +
                      error.what());
  }
  return parse_document(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_to_json(const RunConfig& config) {
  json doc;
  doc["model"] = {{"d", config.d},
                  {"p", config.p},
                  {"nonlinearity", config.nonlinearity_on},
                  {"bypass_admissibility", config.bypass_admissibility}};
  doc["initial"] = {{"kind", kind_name(config.initial.kind)},
                    {"amplitude", config.initial.amplitude},
                    {"center", config.initial.center},
                    {"width", config.initial.width},
                    {"velocity", velocity_name(config.initial.velocity)}};
  if (config.grid.auto_r_max)
    doc["grid"]["r_max"] = "auto";
  else
    doc["grid"]["r_max"] = config.grid.r_max;
  doc["grid"]["cells"] = config.grid.cells;
  doc["grid"]["cfl"] = config.grid.cfl;
  doc["time"] = {{"t_final", config.t_final},
                 {"diagnostic_stride", config.stride}};

  json diags;
  diags["energies"] = config.energies;
  diags["cones"] = {{"taus", config.cone_taus}, {"ss", config.cone_ss}};
  diags["regions"] = json::array();
  for (const RegionSpec& spec : config.regions) {
    json vertices = json::array();
    for (const auto& v : spec.vertices) vertices.push_back({v[0], v[1]});
    diags["regions"].push_back({{"id", spec.id}, {"vertices", vertices}});
  }
  diags["morawetz_R"] = config.morawetz_radii;
  diags["weights"] = json::array();
  for (const WeightSpec& spec : config.weights)
    diags["weights"].push_back(weight_to_json(spec));
  diags["kappa_list"] = config.kappa_list;
  diags["scattering_T_list"] = config.scattering_times;
  diags["interior_c_list"] = config.interior_speeds;
  diags["norm_exponents"] = config.norm_exponents;
  doc["diagnostics"] = std::move(diags);
  doc["output_dir"] = config.output_dir;
  return doc.dump(2);
}

RadialGrid resolve_grid(const RunConfig& config) {
  double r_max = config.grid.r_max;
  if (config.grid.auto_r_max) {
    const double support = config.initial.support_radius();
    double reach = causal_radius(support, config.t_final);
    for (double T : config.scattering_times)
      reach = std::max(reach, causal_radius(support, 2.0 * T));
    r_max = reach + 1.0;
  }
  RadialGrid grid;
  grid.d = config.d;
  grid.n = config.grid.cells;
  grid.h = r_max / static_cast<double>(config.grid.cells);
  validate_grid(grid);

  if (!config.grid.auto_r_max) {
    const double support = config.initial.support_radius();
    double reach = causal_radius(support, config.t_final);
    for (double T : config.scattering_times)
      reach = std::max(reach, causal_radius(support, 2.0 * T));
    if (grid.r_max() < reach)
      fail("grid.r_max",
           "too small: the wall becomes visible before t_final (needs >= " +
               std::to_string(reach) + ")");
  }
  return grid;
}

DiagnosticsConfig build_diagnostics(const RunConfig& config,
                                    const RadialGrid& grid) {
  const double r_max = grid.r_max();
  const double dt = config.grid.cfl * grid.h;

  DiagnosticsConfig dc;
  dc.stride = config.stride;
  dc.energies = config.energies;
  dc.axis_trace = true;
  dc.global_morawetz = true;
  dc.forward_cone_offsets = config.cone_taus;
  dc.backward_cone_offsets = config.cone_ss;
  dc.interior_speeds = config.interior_speeds;

  for (size_t i = 0; i < config.regions.size(); ++i) {
    const RegionSpec& spec = config.regions[i];
    const std::string field = "diagnostics.regions[" + std::to_string(i) +
                              "] (" + spec.id + ")";
    std::vector<std::pair<double, double>> loop;
    loop.reserve(spec.vertices.size());
    for (const auto& v : spec.vertices) loop.emplace_back(v[0], v[1]);
    Region region;
    try {
      region = Region::from_vertices(spec.id, std::move(loop));
    } catch (const std::exception& error) {
      fail(field, error.what());
    }
    if (region.r_max() > r_max + 1e-12)
      fail(field, "extends past the grid radius");
    if (region.t_min() < -1e-12 || region.t_max() > config.t_final + 1e-12)
      fail(field, "extends past the simulated time span");
    dc.regions.push_back(std::move(region));
  }

  for (double R : config.morawetz_radii) {
    if (!(R > 0.0 && R < r_max))
      fail("diagnostics.morawetz_R", "entries must lie inside (0, r_max)");
    dc.morawetz_radii.push_back(R);
  }

  dc.weights = config.weights;

  const long total_steps = std::lround(config.t_final / dt);
  for (double T : config.scattering_times) {
    const long k = std::min(std::lround(T / dt), total_steps);
    if (k <= 0) fail("diagnostics.scattering_T_list", "entry snaps to t = 0");
    const double snapped = static_cast<double>(k) * dt;
    bool duplicate = false;
    for (double existing : dc.snapshot_times)
      if (existing == snapped) duplicate = true;
    if (!duplicate) dc.snapshot_times.push_back(snapped);
  }

  dc.norm_exponents = config.norm_exponents;
  if (!config.scattering_times.empty()) {
    const double r_s = 0.5 * (config.d + 1.0) * (config.p - 1.0);
    const double r_w = 2.0 * (config.d + 1.0) / (config.d - 1.0);
    for (double extra : {r_s, r_w}) {
      bool present = false;
      for (double r : dc.norm_exponents)
        if (std::abs(r - extra) <= 1e-12) present = true;
      if (!present && extra >= 1.0) dc.norm_exponents.push_back(extra);
    }
  }
  return dc;
}

}  // namespace radwave
