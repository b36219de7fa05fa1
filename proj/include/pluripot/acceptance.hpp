// Acceptance suite: twelve desk-scale checks combining exact identities,
// classical closed-form oracles, and property packs. Each check returns a
// pass/fail verdict with a one-line numeric summary; run_acceptance never
// throws for a failed tolerance (only for infrastructure errors).
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pluripot {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace pluripot
