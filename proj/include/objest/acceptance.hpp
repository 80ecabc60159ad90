#pragma once

#include <string>
#include <vector>

namespace objest::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_all();

// One line per criterion: "[PASS] 1 table1 ... (0.01 s)".
std::string format_line(const CriterionResult& result);

}  // namespace objest::acceptance
