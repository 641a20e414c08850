#pragma once

#include <stdexcept>
#include <string>

namespace szego {

// Invalid parameters or malformed specs. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure: quadrature that does not converge, a moment matrix that
// is not positive definite, overflow guards, degenerate kernels. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system and parsing failures on input/output paths. Exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace szego
