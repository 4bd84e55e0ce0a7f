#pragma once

#include <stdexcept>

namespace excesslab {

/// An argument violates the documented precondition of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a value that is impossible in exact arithmetic,
/// e.g. a negative excess radicand well beyond rounding.
class NumericFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace excesslab
