#pragma once

#include <stdexcept>
#include <string>

namespace skewdiff {

/// Raised when an iterative numerical routine fails to reach its tolerance.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when interface coefficients are not symmetric nonnegative.
class InvalidCoefficient : public std::invalid_argument {
 public:
  explicit InvalidCoefficient(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace skewdiff
