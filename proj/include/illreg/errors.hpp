#pragma once

#include <stdexcept>
#include <string>

namespace illreg {

/// Malformed or inconsistent input (bad sizes, non-finite entries, unknown names).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operator has no usable singular values.
class EmptySpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested value lies outside the range a rule can invert.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Iteration parameters violate a stability or bracketing requirement.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace illreg
