#pragma once

#include <stdexcept>
#include <string>

namespace cubehc {

// Bad arguments: out-of-range exponents, wrong lengths, malformed specs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation would exceed the supported dimension or memory cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative routine failed to converge, or a solver result is inconsistent.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a moment problem has no representing measure on the candidate set.
class FeasibilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Raised when an exhaustive search did not produce the witness it was asked for.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cubehc
