#pragma once

// Executes one scenario task and assembles its report.

#include <map>
#include <string>

#include "mwkr/report.hpp"
#include "mwkr/scenario.hpp"

namespace mwkr {

struct RunOptions {
  bool timings = false;
  /// Replaces every verify-lemmas instance count when >= 0.
  int count = -1;
};

struct RunOutcome {
  Json report;
  Status status = Status::pass;
  /// Named (scale, value) curves for CSV export.
  std::map<std::string, Curve> curves;
};

/// Never throws for task failures: library errors become an error report.
RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// 0 pass, 2 certificate or suite failure, 1 error.
int exit_code(Status status);

}  // namespace mwkr
