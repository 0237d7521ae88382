#pragma once

#include <stdexcept>
#include <string>

namespace rdsir {

// Bad argument or violated precondition (negative rates, mismatched grids...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Linear or eigen solver failure: singular operator, budget exceeded,
// residual contract not met.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A runtime invariant of the model was violated (negativity, mass bound).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario text could not be parsed. `line()` is 1-based, 0 when the error
// is not tied to a single line (e.g. a missing required key).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdsir
