#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chemotaxis {

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Built-in property suite: constants, resolvent, fixed points, mass
/// conservation, heat calibration, classifier examples and one simulation per
/// boundedness rule. Scenario runs are spread over `jobs` worker threads.
std::vector<PropertyResult> run_property_suite(int jobs = 1);

/// One "PASS|FAIL name: detail" line per result.
void write_property_results(std::ostream& os, const std::vector<PropertyResult>& results);

}  // namespace chemotaxis
