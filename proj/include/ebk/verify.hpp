// End-to-end verification suite: each criterion exercises a documented
// numerical claim end to end and reports one pass/fail line.  Shared between
// the acceptance test binary and the CLI verify task.

#pragma once

#include <string>
#include <vector>

namespace ebk {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values and the pinned tolerances
  double seconds = 0;
};

// Runs criteria in id order; `only` (when nonzero) restricts to a single id.
std::vector<CriterionResult> run_acceptance(int only = 0);

// Formats "PASS  3 rapid-decay ..." lines.
std::string format_criterion(const CriterionResult& r);

}  // namespace ebk
