#pragma once
/// The verification suite: every release gate of the laboratory as one
/// named check with a measured value, a pinned tolerance and an optional
/// observed refinement order.  Checks share simulation runs through an
/// internal cache; the whole suite is deterministic.

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace radwave {

struct CheckResult {
  std::string name;
  std::string status = "pass";  // "pass" | "fail" | "skip"
  double measured = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  double refinement_order = std::numeric_limits<double>::quiet_NaN();
  std::string detail;
};

struct VerificationSummary {
  std::vector<CheckResult> checks;

  int failures() const;
  bool all_passed() const { return failures() == 0; }
};

struct VerifyOptions {
  /// Skip every check that needs a PDE run; keeps the algebraic checks and
  /// the determinism probe.
  bool fast = false;
  /// Gate from the config: with the nonlinearity off only linear-flow and
  /// algebraic checks run, the rest report skip.
  bool nonlinearity_on = true;
  /// Where the determinism probe writes its twin run directories.
  std::filesystem::path scratch_dir = "verify-scratch";
};

VerificationSummary run_verification(const VerifyOptions& options);

/// One line per check: status, name, measured vs tolerance, order, detail.
void print_summary(const VerificationSummary& summary, std::ostream& out);

}  // namespace radwave
