#pragma once

#include <string>
#include <vector>

namespace gspf {

// One end-to-end reproduction check: build the objects, measure, compare
// against the stated tolerance. detail carries the measured numbers; notes
// carries informational context that never affects pass.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
  std::string notes;
};

// figures -> {1, 2, 4}; table1 -> {8}; random-graphs -> {5, 6, 7};
// all -> {1..10}. Anything else throws ParamError.
const std::vector<int>& suite_criteria(const std::string& suite);

// data_dir locates bundled graph fixtures (roadnet2642.edges). When out_dir
// is nonempty the criterion writes its CSV artifacts there; pass/fail never
// depends on artifact emission. Checks with a stated runtime budget fail
// when they exceed it.
CriterionResult run_criterion(int index, const std::string& data_dir,
                              const std::string& out_dir = std::string());

}  // namespace gspf
