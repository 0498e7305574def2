#pragma once

#include <stdexcept>
#include <string>

namespace bosefold {

/// Bad sizes, parameters, indices or dimensions passed to a builder or operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's documented precondition does not hold for its input state.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Convergence failure, cutoff overflow and similar numeric breakdowns.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation would exceed the local Fock cutoff.
class CutoffError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bosefold
