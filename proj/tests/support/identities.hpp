#pragma once

#include <functional>
#include <string>
#include <vector>

namespace npc::testing {

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;
  bool pass() const { return failures == 0; }
};

struct Suite {
  std::string name;
  std::function<SuiteResult(unsigned seed, int instances)> run;
};

/// Randomized exact identity suites over polynomial data (degree <= 3, m <= 4).
const std::vector<Suite>& identity_suites();

}  // namespace npc::testing
