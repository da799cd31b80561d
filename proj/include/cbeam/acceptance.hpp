#pragma once

#include <string>
#include <vector>

namespace cbeam {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their targets
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Multiplies every tolerance. Values below 1 tighten the suite; 0 makes every
  /// check fail, which is how the command-line test hook corrupts it on purpose.
  double tolerance_scale = 1.0;
  /// Criterion ids to run; empty runs all.
  std::vector<int> only;
};

/// Names of the built-in criteria, in id order (ids start at 1).
std::vector<std::string> criterion_names();

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One line: "PASS  3 quarter_arc_orders  (1.23 s)  details".
std::string format_result(const CriterionResult& r);

}  // namespace cbeam
