// Self-validation suite: every structural invariant of the discretization
// checked end to end on small fixtures. Used by the `validate` CLI command
// and by the test suite.

#pragma once

#include <string>
#include <vector>

namespace wg {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationOptions {
  unsigned seed = 12345;  // affects sampled points/vectors only, never the verdict
  // Fault injection for testing the validator itself. Supported:
  // "flipped-normal" — one interior edge normal flipped without updating
  // the adjacent element signs, which must trip the sign-cancellation check.
  std::string inject;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace wg
