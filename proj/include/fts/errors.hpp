#pragma once

#include <stdexcept>
#include <string>

namespace fts {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. Γ at a ≤ 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A truncated series is too short for the requested operation.
class WidthError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document. Carries the 1-based line/column when
/// the failure is syntactic, 0 otherwise.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"
                   : msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed document whose values violate a problem invariant.
class ValidationError : public ConfigError {
 public:
  ValidationError(const std::string& field, const std::string& msg)
      : ConfigError(field + ": " + msg), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

/// Boundary data fail the geometric-ratio test required by the triangular solve.
class NotSeparable : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Data carry no usable signal (φ₀ = 0 or μ₂ identically zero).
class DegenerateData : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace fts
