#pragma once

#include <stdexcept>
#include <string>

namespace cliffdeg {

// A computation would exceed a configured size budget. Never silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters that do not describe a supported ring, family or group.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal consistency assertion failed (e.g. a lift that does not reduce
// correctly). Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cliffdeg
