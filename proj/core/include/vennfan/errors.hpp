#pragma once

#include <stdexcept>

namespace vennfan {

/// A parameter or input is outside the range an operation accepts.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (mismatched inputs, anchor
/// outside its region, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vennfan
