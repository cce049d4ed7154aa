#pragma once

#include <optional>
#include <string>
#include <vector>

namespace daeforms {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Ordered list of named checks; the first failing one is the diagnostic.
struct CheckReport {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  std::optional<Check> first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c;
    return std::nullopt;
  }
};

}  // namespace daeforms
