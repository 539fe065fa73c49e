#pragma once

#include <stdexcept>
#include <string>

namespace kinchain {

// Base of every error the library throws. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Inconsistent dimensions, e.g. a frame with the wrong number of points.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Unknown label or joint name.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Input values violating a precondition (too short, non-finite, no trials...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A numerically degenerate quantity: zero variance, zero reference amplitude.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace kinchain
