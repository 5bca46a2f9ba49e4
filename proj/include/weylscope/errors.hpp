#pragma once

#include <stdexcept>
#include <string>

namespace weylscope {

// Argument outside the domain [0, b) of the measure, or outside the
// admissible region of a spectral parameter.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Integrand produced a non-finite value.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedMeasureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IterationLimitError : std::runtime_error {
  IterationLimitError(const std::string& what, double residual)
      : std::runtime_error(what), last_residual(residual) {}
  double last_residual;
};

struct DegenerateDiskError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// u(z,0) = 0 while propagating the Weyl solution; impossible for Im z > 0.
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line_number)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

}  // namespace weylscope
