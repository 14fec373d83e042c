#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoflow {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every acceptance criterion, printing one pass/fail line per criterion.
// Returns false when any criterion fails.
bool run_acceptance(std::ostream& log, std::vector<CriterionResult>* results = nullptr);

}  // namespace geoflow
