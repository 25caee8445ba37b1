#pragma once

#include <cstdint>

// Process-wide computation-step budget. Reduction steps, pair treatments and
// elimination pivots all charge against it; running out throws BudgetExceeded.

namespace logstrat::budget {

inline constexpr std::uint64_t kDefaultLimit = 200'000'000;

void set_limit(std::uint64_t steps);
std::uint64_t limit();
std::uint64_t used();
void reset();

// Throws BudgetExceeded once the running total passes the limit.
void charge(std::uint64_t steps = 1);

// Installs a limit for a scope and restores the previous limit and usage.
class Scope {
 public:
  explicit Scope(std::uint64_t steps);
  ~Scope();
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

 private:
  std::uint64_t saved_limit_;
  std::uint64_t saved_used_;
};

}  // namespace logstrat::budget
