// Command-line front end: simulate | verify | sweep | report.
// Exit codes: 0 ok, 1 check or sweep-point failure, 2 config error,
// 3 runtime error.  RADWAVE_OUTPUT_ROOT relocates all written artifacts.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "radwave/pipeline.hpp"
#include "radwave/run_config.hpp"
#include "radwave/verification.hpp"

namespace {

std::filesystem::path output_root() {
  const char* env = std::getenv("RADWAVE_OUTPUT_ROOT");
  return env != nullptr && *env != '\0' ? std::filesystem::path(env)
                                        : std::filesystem::path(".");
}

radwave::SweepAxis parse_axis(const std::string& spec) {
  const size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw radwave::ConfigError("axis \"" + spec +
                               "\" must look like name=v1,v2,...");
  radwave::SweepAxis axis;
  axis.name = spec.substr(0, eq);
  std::string rest = spec.substr(eq + 1);
  size_t pos = 0;
  while (pos <= rest.size()) {
    const size_t comma = rest.find(',', pos);
    const std::string cell =
        rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (cell.empty())
      throw radwave::ConfigError("axis \"" + spec + "\" has an empty value");
    char* end = nullptr;
    const double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
      throw radwave::ConfigError("axis value \"" + cell +
                                 "\" is not a number");
    axis.values.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (axis.values.empty())
    throw radwave::ConfigError("axis \"" + spec + "\" has no values");
  return axis;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the radial defocusing wave equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string report_dir;
  std::string sweep_out = "sweep.csv";
  std::vector<std::string> axis_specs;
  unsigned workers = 0;
  bool fast = false;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run one configured simulation and write its reports");
  simulate->add_option("--config", config_path, "JSON config file")
      ->required();

  CLI::App* verify =
      app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--config", config_path,
                     "optional config gating the suite");
  verify->add_flag("--fast", fast,
                   "only the algebraic checks and the determinism probe");

  CLI::App* sweep =
      app.add_subcommand("sweep", "run a cartesian parameter sweep");
  sweep->add_option("--config", config_path, "template JSON config")
      ->required();
  sweep
      ->add_option("--axis", axis_specs,
                   "axis as name=v1,v2,... over d, p, kappa or amplitude")
      ->required();
  sweep->add_option("--workers", workers,
                    "worker threads (default: hardware concurrency)");
  sweep->add_option("--out", sweep_out, "aggregated CSV path");

  CLI::App* report = app.add_subcommand(
      "report", "re-derive estimates from a stored run directory");
  report->add_option("--dir", report_dir, "run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const radwave::RunConfig config = radwave::load_config(config_path);
      const auto dir = radwave::simulate_to_directory(config, output_root());
      std::cout << "wrote " << dir.string() << "\n";
      return 0;
    }
    if (verify->parsed()) {
      radwave::VerifyOptions options;
      options.fast = fast;
      options.scratch_dir = output_root() / "verify-scratch";
      if (!config_path.empty()) {
        const radwave::RunConfig config = radwave::load_config(config_path);
        if (config.bypass_admissibility &&
            !radwave::admissible_model(config.d, config.p))
          throw radwave::ConfigError(
              "verify refuses models outside the standing assumption");
        options.nonlinearity_on = config.nonlinearity_on;
      }
      const radwave::VerificationSummary summary =
          radwave::run_verification(options);
      radwave::print_summary(summary, std::cout);
      return summary.all_passed() ? 0 : 1;
    }
    if (sweep->parsed()) {
      const radwave::RunConfig config = radwave::load_config(config_path);
      std::vector<radwave::SweepAxis> axes;
      for (const std::string& spec : axis_specs)
        axes.push_back(parse_axis(spec));
      const auto out_path = output_root() / sweep_out;
      const int failures =
          radwave::sweep_to_csv(config, axes, workers, out_path);
      std::cout << "wrote " << out_path.string() << " (" << failures
                << " failed points)\n";
      return failures == 0 ? 0 : 1;
    }
    if (report->parsed()) {
      radwave::report_directory(report_dir, std::cout);
      return 0;
    }
  } catch (const radwave::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  }
  return 0;
}
