#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blasso {

/// Argument outside the mathematical domain of a function (x < 0 where
/// x >= 0 is required, u outside [0, 1], non-finite input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter set violating a distribution or model constraint.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Valid parameters that a particular code path does not handle, e.g. a = 0
/// for the d/p/q/r surface of the Lasso distribution.
class UnsupportedParameter : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, long iteration = -1)
      : std::runtime_error(what), iteration_(iteration) {}

  /// Sampler iteration at which the failure happened, -1 if not applicable.
  long iteration() const noexcept { return iteration_; }

 private:
  long iteration_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                           std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blasso
