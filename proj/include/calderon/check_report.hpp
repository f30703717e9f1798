#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace calderon {

/// Outcome of a randomized property suite. Failures are entries, never exceptions.
struct CheckReport {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  std::set<std::size_t> failed_trials;

  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }

  void fail(std::size_t trial, std::string message) {
    failed_trials.insert(trial);
    violations.push_back("trial " + std::to_string(trial) + ": " + std::move(message));
  }
};

} // namespace calderon
