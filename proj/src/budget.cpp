#include "logstrat/budget.hpp"

#include <atomic>
#include <string>

#include "logstrat/errors.hpp"

namespace logstrat::budget {
namespace {
std::atomic<std::uint64_t> g_limit{kDefaultLimit};
std::atomic<std::uint64_t> g_used{0};
}  // namespace

void set_limit(std::uint64_t steps) { g_limit.store(steps, std::memory_order_relaxed); }
std::uint64_t limit() { return g_limit.load(std::memory_order_relaxed); }
std::uint64_t used() { return g_used.load(std::memory_order_relaxed); }
void reset() { g_used.store(0, std::memory_order_relaxed); }

void charge(std::uint64_t steps) {
  const std::uint64_t now = g_used.fetch_add(steps, std::memory_order_relaxed) + steps;
  if (now > g_limit.load(std::memory_order_relaxed))
    throw BudgetExceeded("computation step budget of " + std::to_string(limit()) +
                         " steps exhausted");
}

Scope::Scope(std::uint64_t steps) : saved_limit_(limit()), saved_used_(used()) {
  set_limit(steps);
  reset();
}

Scope::~Scope() {
  set_limit(saved_limit_);
  g_used.store(saved_used_, std::memory_order_relaxed);
}

}  // namespace logstrat::budget
