#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "symdefect/errors.hpp"

namespace symdefect {

/// Step allowance (one step = one critical pair processed by Buchberger) plus an
/// optional wall-clock deadline. Shared by reference across a chain of computations.
class Budget {
 public:
  static constexpr std::uint64_t kDefaultSteps = 200000;

  explicit Budget(std::uint64_t max_steps = kDefaultSteps,
                  std::optional<std::chrono::milliseconds> time_limit = std::nullopt)
      : max_steps_(max_steps) {
    if (time_limit) deadline_ = std::chrono::steady_clock::now() + *time_limit;
  }

  static Budget unlimited() { return Budget(UINT64_MAX); }

  void charge(std::uint64_t steps, std::size_t basis_size = 0, std::size_t pending = 0) {
    used_ += steps;
    if (used_ > max_steps_)
      throw BudgetExceeded("step budget of " + std::to_string(max_steps_) + " exhausted", used_, basis_size,
                           pending);
    check_clock(basis_size, pending);
  }

  void check_clock(std::size_t basis_size = 0, std::size_t pending = 0) const {
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_)
      throw BudgetExceeded("time budget exhausted", used_, basis_size, pending);
  }

  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t limit() const noexcept { return max_steps_; }

 private:
  std::uint64_t max_steps_;
  std::uint64_t used_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace symdefect
