#pragma once

#include <stdexcept>
#include <string>

namespace sigtree {

// Raised when caller-supplied data violates a precondition (shape mismatch,
// malformed input, unmet mathematical precondition). The CLI maps these to
// exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompatibleOperands : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PreconditionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError(what + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sigtree
