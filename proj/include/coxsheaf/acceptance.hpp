#pragma once

// The acceptance suite: twelve exact checks over the presets, each reported
// as one pass/fail line with its running time.

#include <iosfwd>
#include <string>
#include <vector>

namespace coxsheaf::acceptance {

enum class Suite { Default, Extended };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool ok = true;
  double seconds = 0;
  std::string detail;  // e.g. number of cases checked
  std::vector<std::string> failures;
};

/// Runs all criteria in order.  Progress lines go to `log` when given.
std::vector<CriterionResult> run(Suite suite, std::ostream* log = nullptr);

/// "PASS [n] title: detail (t s)" plus up to five failure lines.
std::string format(const CriterionResult& r);

}  // namespace coxsheaf::acceptance
