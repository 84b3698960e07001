// Acceptance gate: runs every registered proposition check at full sample
// counts and prints one pass/fail line per criterion. Exit 0 iff all pass.

#include "chucoal/suite.hpp"

#include <cstdio>

int main() {
  chucoal::SuiteConfig config;  // pinned defaults: full battery
  chucoal::SuiteReport report = chucoal::run_suite(config);

  int criterion = 0;
  bool all_passed = true;
  for (const auto& check : report.checks) {
    ++criterion;
    all_passed &= check.passed;
    std::printf("criterion %2d  %-38s  %s  (residual %.2e, %.2fs)%s%s\n",
                criterion, check.label.c_str(),
                check.passed ? "PASS" : "FAIL", check.max_residual,
                check.seconds, check.detail.empty() ? "" : "  -- ",
                check.detail.c_str());
  }
  std::printf("%s\n", all_passed ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES present");
  return all_passed ? 0 : 1;
}
