#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace farsa {

/// Vector or matrix sizes that do not conform.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A backtracking search exhausted its budget without accepting a step.
class LineSearchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised for numerical breakdowns (non-finite values, indefinite curvature).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed dataset input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace farsa
