#pragma once

#include <cstdint>
#include <mutex>

#include "herd/errors.hpp"

namespace herd {

// Strict episode accountant shared by the design methods: every simulated
// episode must be charged here exactly once, and the consumed count can
// never exceed the cap or decrease.
class Budget {
 public:
  explicit Budget(std::uint64_t max_episodes) : max_(max_episodes) {}

  std::uint64_t max_episodes() const { return max_; }

  std::uint64_t consumed() const {
    std::lock_guard lock(mutex_);
    return consumed_;
  }

  std::uint64_t remaining() const {
    std::lock_guard lock(mutex_);
    return max_ - consumed_;
  }

  // Throws BudgetExhaustedError on overdraft; no partial charge happens.
  void charge(std::uint64_t n) {
    if (!try_charge(n)) throw BudgetExhaustedError("episode budget exhausted");
  }

  bool try_charge(std::uint64_t n) noexcept {
    std::lock_guard lock(mutex_);
    if (consumed_ + n > max_) return false;
    consumed_ += n;
    return true;
  }

 private:
  mutable std::mutex mutex_;
  std::uint64_t max_;
  std::uint64_t consumed_ = 0;
};

}  // namespace herd
