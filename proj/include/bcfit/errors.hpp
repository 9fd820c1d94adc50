#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcfit {

/// Malformed or invalid input data (maps to CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV syntax or schema violation at a specific line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Nothing left to work on: empty panel, empty date intersection (exit code 3).
class EmptyDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested date or record does not exist (exit code 4).
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the model (x <= 0, e <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Normal equations are rank deficient at the optimum.
class NonIdentifiableError : public std::runtime_error {
 public:
  NonIdentifiableError() : std::runtime_error("non-identifiable at optimum") {}
};

}  // namespace bcfit
