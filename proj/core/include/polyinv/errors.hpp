#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyinv {

// Base class for every error raised by the library. Callers that only need
// to distinguish failure classes can catch the subclasses below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched dimensions or degrees between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (CSV, XYZ, JSON, graph specs). Carries the 1-based
// line number when one is known, 0 otherwise.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A numerically degenerate situation: zero scale, repeated eigenvalues,
// inconsistent invariants.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Integer overflow in combinatorial quantities.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyinv
