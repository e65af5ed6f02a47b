#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topvol {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 1 and prints `what()` verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (z in {0,1},
/// gcd != 1, non-prime modulus, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NoGeometricSolutionError : public SolverError {
 public:
  using SolverError::SolverError;
};

class UnsupportedExpressionError : public Error {
 public:
  using Error::Error;
};

/// Sign of an exact expression could not be resolved below the precision
/// ceiling. Signals a near-tie; never silently rounded.
class UndecidableError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(const std::string& file, std::size_t row, const std::string& message)
      : Error(file + ": row " + std::to_string(row) + ": " + message), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class ChecksumError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class MalformedNameError : public Error {
 public:
  using Error::Error;
};

}  // namespace topvol
