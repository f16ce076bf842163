// Release gate: runs the whole verification suite and prints one line per
// check.  Exit status is the number of failed checks, capped for shells.

#include <algorithm>
#include <iostream>

#include "radwave/verification.hpp"

int main() {
  radwave::VerifyOptions options;
  options.scratch_dir = "acceptance-scratch";
  const radwave::VerificationSummary summary =
      radwave::run_verification(options);
  radwave::print_summary(summary, std::cout);
  return std::min(summary.failures(), 125);
}
