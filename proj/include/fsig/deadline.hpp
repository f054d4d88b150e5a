#pragma once

#include "fsig/error.hpp"

#include <chrono>
#include <optional>

namespace fsig {

/// Wall-clock budget shared by long-running loops. Default-constructed
/// deadlines never expire.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline after_seconds(double seconds) {
    Deadline d;
    if (seconds > 0) {
      d.limit_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(seconds));
    }
    return d;
  }

  bool expired() const { return limit_ && Clock::now() > *limit_; }

  void check(const char* where) const {
    if (expired()) throw BudgetExceeded(std::string("time budget exceeded in ") + where);
  }

 private:
  std::optional<Clock::time_point> limit_;
};

}  // namespace fsig
