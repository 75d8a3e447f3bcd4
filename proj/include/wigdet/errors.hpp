#pragma once

#include <stdexcept>
#include <string>

namespace wigdet {

// Bad request (unknown catalog name, invalid sizes or flags).  The CLI maps
// these to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CatalogError : UsageError {
  using UsageError::UsageError;
};

struct ShapeError : UsageError {
  using UsageError::UsageError;
};

struct SizeError : UsageError {
  using UsageError::UsageError;
};

// Numerical failure on a valid request (singular matrix, degenerate trace,
// quadrature that cannot meet its tolerance).  The CLI maps these to exit
// code 3, distinct from usage errors.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularError : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateTraceError : NumericalError {
  using NumericalError::NumericalError;
};

struct ToleranceError : NumericalError {
  using NumericalError::NumericalError;
};

struct PreconditionError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace wigdet
