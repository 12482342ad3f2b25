#pragma once

// The acceptance battery behind `liftlab suite`: eleven numbered criteria,
// each run on the built-in catalog with fixed seeds.

#include <functional>
#include <string>
#include <vector>

namespace liftlab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<CriterionResult()> run;
};

const std::vector<Criterion>& suite_criteria();

/// Runs the criteria whose ids are listed (all when empty), in id order.
/// Exceptions inside a criterion turn into a failed result.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids = {});

}  // namespace liftlab
