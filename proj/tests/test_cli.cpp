// End-to-end checks of the config layer and the command line binary:
// field-level parse errors, automatic grid sizing, snapshot snapping,
// run artifacts, byte-level determinism, manifest round trips, sweeps
// and the report rederivation.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"
#include "radwave/pipeline.hpp"
#include "radwave/run_config.hpp"

#ifndef RADWAVE_CLI_PATH
#error "RADWAVE_CLI_PATH must point at the built binary"
#endif

using namespace radwave;
namespace fs = std::filesystem;

namespace {

const fs::path kScratch = "cli-scratch";

// Message of the ConfigError a parse is expected to raise.
std::string parse_error(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& error) {
    return error.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(RADWAVE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int line_count(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

std::string small_config(const std::string& output_dir) {
  return std::string(R"({
    "model": {"d": 3, "p": 3.0},
    "initial": {"kind": "bump", "amplitude": 1.0, "width": 2.0},
    "grid": {"cells": 256},
    "time": {"t_final": 2.0, "diagnostic_stride": 8},
    "diagnostics": {
      "morawetz_R": [1.0],
      "kappa_list": [0.5],
      "regions": [{"id": "box", "vertices": [[0, 0], [2, 0], [2, 1], [0, 1]]}]
    },
    "output_dir": ")") +
         output_dir + "\"}";
}

}  // namespace

TEST_CASE("config defaults and parse errors name their field") {
  const RunConfig defaults = parse_config_text("{}");
  CHECK(defaults.d == 3);
  CHECK(defaults.p == 3.0);
  CHECK(defaults.grid.auto_r_max);
  CHECK(defaults.output_dir == "out");

  CHECK(contains(parse_error("not json"), "not valid JSON"));
  CHECK(contains(parse_error(R"({"modle": {}})"), "modle"));
  CHECK(contains(parse_error(R"({"model": {"d": 12}})"), "model.d"));
  CHECK(contains(parse_error(R"({"model": {"p": "three"}})"), "model.p"));
  CHECK(contains(parse_error(R"({"initial": {"width": -1}})"),
                 "initial.width"));
  CHECK(contains(parse_error(R"({"time": {"t_final": 0}})"), "time.t_final"));
  CHECK(contains(parse_error(R"({"grid": {"cells": 4}})"), "grid.cells"));
  CHECK(contains(parse_error(R"({"grid": {"cfl": 1.5}})"), "grid.cfl"));
  CHECK(contains(
      parse_error(R"({"diagnostics": {"kappa_list": [1.5]}})"),
      "kappa_list"));
  CHECK(contains(
      parse_error(
          R"({"time": {"t_final": 2}, "diagnostics": {"scattering_T_list": [30]}})"),
      "scattering_T_list"));
  CHECK(contains(
      parse_error(R"({"diagnostics": {"regions": [{"vertices": [[0, 0]]}]}})"),
      "vertices"));
}

TEST_CASE("the admissibility gate is explicit but bypassable") {
  const std::string message = parse_error(R"({"model": {"d": 3, "p": 6.0}})");
  CHECK(contains(message, "standing assumption"));
  CHECK(contains(message, "bypass_admissibility"));

  const RunConfig bypassed = parse_config_text(
      R"({"model": {"d": 3, "p": 6.0, "bypass_admissibility": true}})");
  CHECK_FALSE(bypassed.params().validated());
}

TEST_CASE("automatic grid sizing covers scattering pull-backs") {
  RunConfig config = parse_config_text(R"({
    "initial": {"kind": "bump", "width": 2.0},
    "time": {"t_final": 10.0},
    "diagnostics": {"scattering_T_list": [10.0]}
  })");
  const RadialGrid grid = resolve_grid(config);
  // reach = support + 2 T = 22, plus one unit of padding.
  CHECK(grid.r_max() == doctest::Approx(23.0).epsilon(1e-12));

  // A fixed wall that the run would see is rejected.
  RunConfig fixed = config;
  fixed.grid.auto_r_max = false;
  fixed.grid.r_max = 15.0;
  CHECK_THROWS_AS(resolve_grid(fixed), ConfigError);

  // Snapshot times are snapped onto the step lattice.
  const DiagnosticsConfig dc = build_diagnostics(config, grid);
  REQUIRE(dc.snapshot_times.size() == 1);
  const double dt = config.grid.cfl * grid.h;
  const double snapped = dc.snapshot_times[0];
  CHECK(std::abs(snapped - 10.0) <= 0.5 * dt);
  const double k = std::round(snapped / dt);
  CHECK(std::abs(snapped - k * dt) < 1e-9);
}

TEST_CASE("config echo parses back to the same run") {
  const std::string text = small_config("echo-check");
  const RunConfig config = parse_config_text(text);
  const RunConfig echoed = parse_config_text(config_to_json(config));
  CHECK(echoed.d == config.d);
  CHECK(echoed.p == config.p);
  CHECK(echoed.initial.amplitude == config.initial.amplitude);
  CHECK(echoed.initial.width == config.initial.width);
  CHECK(echoed.grid.cells == config.grid.cells);
  CHECK(echoed.grid.auto_r_max == config.grid.auto_r_max);
  CHECK(echoed.t_final == config.t_final);
  CHECK(echoed.stride == config.stride);
  CHECK(echoed.regions.size() == config.regions.size());
  CHECK(echoed.kappa_list == config.kappa_list);
  CHECK(echoed.output_dir == config.output_dir);
}

TEST_CASE("simulate writes the full artifact set") {
  fs::remove_all(kScratch);
  write_file(kScratch / "run.json", small_config("cli-scratch/run1"));
  CHECK(run_cli("simulate --config " + (kScratch / "run.json").string()) == 0);

  const fs::path dir = kScratch / "run1";
  for (const char* name : {"energies.csv", "regions.csv", "morawetz.csv",
                           "decay.json", "manifest.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / name));
  }

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("status") == "ok");
  CHECK(manifest.at("resolved").at("r_max").get<double>() ==
        doctest::Approx(5.0));

  // header + one region in both energy directions
  CHECK(line_count(slurp(dir / "regions.csv")) == 3);
  CHECK(line_count(slurp(dir / "energies.csv")) > 10);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  write_file(kScratch / "run2.json", small_config("cli-scratch/run2"));
  CHECK(run_cli("simulate --config " + (kScratch / "run2.json").string()) ==
        0);
  REQUIRE(fs::exists(kScratch / "run1/energies.csv"));
  CHECK(slurp(kScratch / "run1/energies.csv") ==
        slurp(kScratch / "run2/energies.csv"));
  CHECK(slurp(kScratch / "run1/regions.csv") ==
        slurp(kScratch / "run2/regions.csv"));
  CHECK(slurp(kScratch / "run1/decay.json") ==
        slurp(kScratch / "run2/decay.json"));
}

TEST_CASE("a manifest reproduces its run") {
  REQUIRE(fs::exists(kScratch / "run1/manifest.json"));
  CHECK(run_cli("simulate --config " +
                (kScratch / "run1/manifest.json").string()) == 0);
  CHECK(slurp(kScratch / "run1/energies.csv") ==
        slurp(kScratch / "run2/energies.csv"));
}

TEST_CASE("report rederives estimates from stored tables") {
  REQUIRE(fs::exists(kScratch / "run1"));
  CHECK(run_cli("report --dir " + (kScratch / "run1").string()) == 0);
  CHECK(fs::exists(kScratch / "run1/report.json"));
}

TEST_CASE("config and runtime failures use distinct exit codes") {
  write_file(kScratch / "bad.json", R"({"model": {"d": 12}})");
  CHECK(run_cli("simulate --config " + (kScratch / "bad.json").string()) ==
        2);
  CHECK(run_cli("simulate --config cli-scratch/no-such-file.json") == 2);

  // A run that blows up mid-flight leaves a failure manifest behind.
  RunConfig doomed = parse_config_text(small_config("cli-scratch/doomed"));
  doomed.initial.amplitude = 1e160;
  CHECK_THROWS(simulate_to_directory(doomed, "."));
  const auto manifest =
      nlohmann::json::parse(slurp(kScratch / "doomed/manifest.json"));
  CHECK(manifest.at("status") == "error");
  CHECK(manifest.at("failing_step").get<long>() >= 0);
}

TEST_CASE("sweeps aggregate deterministically across worker counts") {
  RunConfig base = parse_config_text(R"({
    "initial": {"kind": "bump", "width": 1.0},
    "grid": {"cells": 128},
    "time": {"t_final": 1.5},
    "diagnostics": {"kappa_list": [0.5]},
    "output_dir": "cli-scratch/sweep-base"
  })");
  SweepAxis axis{"amplitude", {0.5, 1.0, 2.0}};
  CHECK(sweep_to_csv(base, {axis}, 1, kScratch / "sweep1.csv") == 0);
  CHECK(sweep_to_csv(base, {axis}, 2, kScratch / "sweep2.csv") == 0);
  const std::string table = slurp(kScratch / "sweep1.csv");
  CHECK(table == slurp(kScratch / "sweep2.csv"));
  CHECK(line_count(table) == 4);
  CHECK(contains(table, "index,amplitude,energy"));

  // Failed points are recorded without aborting the sweep.
  SweepAxis bad{"p", {3.0, 9.0}};
  CHECK(sweep_to_csv(base, {bad}, 1, kScratch / "sweep3.csv") == 1);
  const std::string mixed = slurp(kScratch / "sweep3.csv");
  CHECK(line_count(mixed) == 3);
  CHECK(contains(mixed, "error"));
}

TEST_CASE("sweep axis specs reach the binary") {
  write_file(kScratch / "sweep.json", std::string(R"({
    "initial": {"kind": "bump", "width": 1.0},
    "grid": {"cells": 128},
    "time": {"t_final": 1.5},
    "output_dir": "cli-scratch/sweep-cli"
  })"));
  CHECK(run_cli("sweep --config " + (kScratch / "sweep.json").string() +
                " --axis amplitude=0.5,1.0 --workers 1 --out "
                "cli-scratch/sweep-cli.csv") == 0);
  CHECK(line_count(slurp(kScratch / "sweep-cli.csv")) == 3);
}

TEST_CASE("verify gates on the configured model") {
  write_file(kScratch / "loose.json",
             R"({"model": {"d": 3, "p": 6.0, "bypass_admissibility": true}})");
  CHECK(run_cli("verify --config " + (kScratch / "loose.json").string() +
                " --fast") == 2);
}

TEST_CASE("fast verification passes from the binary") {
  CHECK(run_cli("verify --fast") == 0);
}
