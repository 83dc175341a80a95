#pragma once

#include <string>
#include <vector>

namespace spherepd {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// lemma2.1, prop3.3, prop3.4, prop3.5, lemma3.2, eq10-11, prop5.1,
/// lemma5.2, lemma5.4, conjecture, optimality.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name);

}  // namespace spherepd
