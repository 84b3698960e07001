#pragma once

#include "chucoal/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chucoal {

// Configuration for the proposition-verification suite. Every check draws
// its randomness from `seed` through an independent substream, so the
// machine-readable report is a pure function of this struct.
struct SuiteConfig {
  std::uint64_t seed = 20260801;
  NumericMode mode = NumericMode::rational;  // random finite-system probabilities
  double eps_eq = 1e-9;
  double eps_grid = 1e-6;
  int universal_dim = 8;
  // Multiplies the per-check sample counts; 1.0 runs the full battery the
  // acceptance gate requires, smaller values give smoke runs.
  double sample_scale = 1.0;
  std::vector<std::string> only;  // run only these labels when nonempty
};

struct CheckResult {
  std::string label;
  std::string params;
  bool passed = false;
  // Float-sensitive checks are expected to fail when eps_eq is forced to 0;
  // such failures are flagged instead of breaking the suite.
  bool expected_fail = false;
  double max_residual = 0.0;
  double seconds = 0.0;
  std::string detail;

  bool ok() const { return passed || expected_fail; }
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckResult> checks;

  bool ok() const;

  // Human-readable table (includes timings).
  std::string table() const;
  // Machine-readable document; excludes timings so that a fixed seed and
  // config reproduce it bit-identically.
  std::string to_json() const;
};

// All registered check labels, in execution order.
std::vector<std::string> suite_check_labels();

SuiteReport run_suite(const SuiteConfig& config);

}  // namespace chucoal
