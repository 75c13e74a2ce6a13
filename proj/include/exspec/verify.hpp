#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "exspec/fusion.hpp"

namespace exspec::verify {

/// Raised when a suite is requested for a prime it does not apply to.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CheckLine {
  std::string label;
  bool pass;
};

struct SuiteResult {
  std::string suite;
  int32_t p = 0;
  std::vector<CheckLine> checks;
  double seconds = 0.0;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// All suite names, in canonical order.
std::vector<std::string> suite_names();

bool suite_exists(const std::string& name);

/// True when the suite makes sense at this prime.
bool suite_applicable(const std::string& name, int32_t p);

/// Runs one named suite. Throws UsageError for unknown names or
/// suite/prime mismatches.
SuiteResult run_suite(const std::string& name, int32_t p);

/// Runs every suite applicable at p.
std::vector<SuiteResult> run_all(int32_t p);

}  // namespace exspec::verify
