#pragma once

#include <string>
#include <vector>

namespace estermann {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string table() const;
};

// Oracle equivalences, orthogonality, limits and quadrature self-tests.
// quick trims instance counts and ranges so the suite runs in seconds.
VerificationReport run_verification(bool quick, unsigned threads = 1);

}  // namespace estermann
