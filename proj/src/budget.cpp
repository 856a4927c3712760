#include "cliffdeg/budget.hpp"

#include <cstdlib>

#include "cliffdeg/errors.hpp"

namespace cliffdeg {

namespace {

void override_from(const char* name, std::size_t& value) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) throw InvalidConfig(std::string("bad value for ") + name + ": " + raw);
  value = static_cast<std::size_t>(v);
}

}  // namespace

Budgets Budgets::from_env() {
  Budgets b;
  override_from("CLIFFDEG_ENUM_BUDGET", b.enumeration);
  override_from("CLIFFDEG_ORBIT_BUDGET", b.orbit_action);
  override_from("CLIFFDEG_ORACLE_BUDGET", b.oracle);
  override_from("CLIFFDEG_ORACLE_CLASSES", b.oracle_classes);
  return b;
}

void require_budget(std::size_t needed, std::size_t limit, const std::string& what) {
  if (needed > limit)
    throw BudgetExceeded(what + " needs " + std::to_string(needed) + " but the budget is " + std::to_string(limit));
}

}  // namespace cliffdeg
