#pragma once

#include <stdexcept>
#include <string>

namespace naecut {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed DIMACS / certificate / map text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An operation was called on an input outside its domain
// (non-monotone formula, structural properties violated, improper colouring, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A certificate offered to a translation step is not a valid witness.
class WitnessError : public Error {
 public:
  using Error::Error;
};

// Exact search gave up. Never means "no solution".
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace naecut
