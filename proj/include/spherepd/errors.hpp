#pragma once

#include <stdexcept>
#include <string>

namespace spherepd {

/// Projection quadrature failed its self-calibration or refinement check.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A moment sum needed by a formula does not converge at the available
/// truncation.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-difference stencil would leave [0, pi].
class StepUnderflowError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A required derivative is neither supplied nor computable.
class DerivativeUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A multi-stage construction could not be completed.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series failed to converge within its term budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spherepd
