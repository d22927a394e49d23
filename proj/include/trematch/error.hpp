#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trematch {

/// Syntax error carrying a 1-based line and column.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string &message, std::size_t line, std::size_t column)
      : std::runtime_error(message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class ExprSyntaxError : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

class BehaviorSyntaxError : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

/// Raised when an internal guard trips (e.g. a fixpoint that fails to
/// converge within its iteration cap). Indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace trematch
