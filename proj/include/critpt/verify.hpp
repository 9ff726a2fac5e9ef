#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace critpt {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> detail;
};

struct VerifyOptions {
  bool quick = false;  // reduced sample counts, proportionally relaxed gates
  int workers = 1;
};

// Runs the full verification suite and prints one pass/fail line per
// criterion (plus indented detail). Returns the results; the run passed iff
// every criterion did.
std::vector<CriterionResult> run_verification(const VerifyOptions& opt, std::ostream& out);

}  // namespace critpt
