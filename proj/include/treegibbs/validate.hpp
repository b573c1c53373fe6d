#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treegibbs {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest observed error under the check's metric
  double bound = 0.0;  // threshold the metric is held to
  std::string detail;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  bool quick = false;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Deterministic self-check suite: the same seed and mode always produce the
// same report, byte for byte once serialized.  quick runs the oracle and
// closed-form subset; the full run adds the spectral and inequality checks.
ValidationReport run_validation(std::uint64_t seed, bool quick);

std::string validation_json(const ValidationReport& r);
std::string validation_text(const ValidationReport& r);

}  // namespace treegibbs
