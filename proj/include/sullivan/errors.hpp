#pragma once

#include <stdexcept>
#include <string>

namespace sullivan {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  parse = 2,
  validation = 3,
  resource = 4,
  invariant = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(ErrorKind::parse,
              line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::validation, what) {}
};

/// Operands built over different generator sets.
class DomainMismatch : public ValidationError {
 public:
  explicit DomainMismatch(const std::string& what) : ValidationError(what) {}
};

/// A configured budget (monomials, Groebner pairs, splits, vertices, group
/// order) would be exceeded. Never a wrong answer, always a refusal.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what)
      : Error(ErrorKind::resource, what) {}
};

/// An internal certificate failed (e.g. a classified map whose difference
/// with its class representative is not exact).
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error(ErrorKind::invariant, what) {}
};

}  // namespace sullivan
