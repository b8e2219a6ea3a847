#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "imcsp/coloring.hpp"

namespace imcsp {

/// Wall-clock budget; a default-constructed deadline never expires.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget)
      : end_(std::chrono::steady_clock::now() + budget) {}

  bool expired() const {
    return end_.has_value() && std::chrono::steady_clock::now() >= *end_;
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

struct TerminalInstance;

struct SolverOptions {
  ColoringConfig coloring;
  /// Replaces q = k^2 2^(2k+2) in the cut solver.
  std::optional<std::int64_t> q_override;
  Deadline deadline;
  /// Called by the cut solver after every recursion step with the reduced instance.
  std::function<void(const TerminalInstance&)> on_recurse_step;
};

}  // namespace imcsp
