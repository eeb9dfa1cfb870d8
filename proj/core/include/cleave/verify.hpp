#pragma once

#include <string>
#include <vector>

namespace cleave {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> detail; // deterministic report lines
};

// Names of the built-in theorem batteries, sorted.
std::vector<std::string> verify_check_names();

// Run the named batteries (all when `only` is empty) against the built-in
// fixtures.  Results come back sorted by check name regardless of execution
// order; `concurrent` runs independent checks in parallel.  Unknown check
// names refuse with kind "UnknownName".
std::vector<CheckResult> run_verify(const std::vector<std::string>& only,
                                    bool concurrent = true);

}  // namespace cleave
