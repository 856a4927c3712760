#pragma once

#include <cstddef>
#include <string>

namespace cliffdeg {

/// Size limits. Exceeding one raises BudgetExceeded; nothing is truncated.
struct Budgets {
  std::size_t enumeration = 5'000'000;  // elements of an enumerated group or candidate scan
  std::size_t orbit_action = 100'000;   // |C(O_1)| for orbit and stabilizer computations
  std::size_t oracle = 100'000;         // group order accepted by the character-degree oracle
  std::size_t oracle_classes = 400;     // conjugacy classes accepted by the oracle

  /// Defaults overridden by CLIFFDEG_ENUM_BUDGET, CLIFFDEG_ORBIT_BUDGET,
  /// CLIFFDEG_ORACLE_BUDGET and CLIFFDEG_ORACLE_CLASSES when set.
  static Budgets from_env();
};

void require_budget(std::size_t needed, std::size_t limit, const std::string& what);

}  // namespace cliffdeg
