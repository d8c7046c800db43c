#pragma once

#include <string>
#include <vector>

namespace fracops {

/// Outcome of one acceptance check. `measured` is compared against `threshold` in the sense
/// stated by `detail`; `passed` is authoritative.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

/// Number of acceptance checks; ids run from 1 to check_count().
int check_count();
std::string check_name(int id);

/// Runs a single check. Exceptions inside the check are reported as a failure.
CheckResult run_check(int id);

/// Runs the given checks (all when empty) in id order.
std::vector<CheckResult> run_checks(const std::vector<int>& ids = {});

}  // namespace fracops
