#pragma once

#include <string>
#include <vector>

namespace adelab {

// One entry per acceptance criterion; run by the `selftest` subcommand and
// by the acceptance test binary.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CheckResult> run_acceptance_suite();

// "PASS name (detail) [t s]" lines, one per criterion
std::string acceptance_report(const std::vector<CheckResult>& results);
bool acceptance_all_pass(const std::vector<CheckResult>& results);

}  // namespace adelab
