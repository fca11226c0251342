#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opmaj {

// Family parameters out of range, nonpositive off-diagonal coefficients,
// malformed sequences.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request needs more recurrence coefficients than the scheme holds.
class DepthError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Raised by the tridiagonal eigensolver when an eigenvalue does not
// converge within the sweep cap, or when converged eigenvalues are not
// strictly increasing.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Forward recurrence produced a non-finite polynomial value.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace opmaj
