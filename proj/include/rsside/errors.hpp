#pragma once

#include <stdexcept>
#include <string>

namespace rsside {

// A caller-supplied argument or parameter combination is outside an operation's contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or search would exceed its configured size budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Internal invariant broken; indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace rsside
