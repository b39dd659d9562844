#pragma once

#include <functional>
#include <string>
#include <vector>

namespace edeco::cli {

struct CriterionResult {
  bool passed = false;
  std::string detail;  // measured values; deterministic, no timings
};

struct Criterion {
  int id = 0;
  std::string name;
  double budget_seconds = 0.0;
  std::function<CriterionResult()> run;
};

/// The project's acceptance criteria, in order. Each run is self-contained
/// and seeded, so repeated runs give identical details.
const std::vector<Criterion>& acceptance_criteria();

}  // namespace edeco::cli
