// Runs every acceptance criterion and prints one line per criterion. Exit status is the number of failures.
#include <cstdio>

#include "fracops/verify.hpp"

int main() {
  int failures = 0;
  for (int id = 1; id <= fracops::check_count(); ++id) {
    const fracops::CheckResult r = fracops::run_check(id);
    std::printf("[%2d] %-40s %s  measured=%.3e  threshold=%.1e  (%.1fs) | %s\n", r.id, r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.measured, r.threshold, r.seconds, r.detail.c_str());
    std::fflush(stdout);
    failures += !r.passed;
  }
  std::printf("%d/%d criteria passed\n", fracops::check_count() - failures, fracops::check_count());
  return failures;
}
