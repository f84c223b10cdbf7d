#pragma once

#include <stdexcept>
#include <string>

namespace fadecap {

/// Input rejected by a precondition check (bad distribution, out-of-range
/// family parameter, infeasible power vector, ...).
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree did not. Signals a bug, not bad input.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace fadecap
