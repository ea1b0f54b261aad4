#pragma once

#include <stdexcept>
#include <string>

namespace sel {

// Domain errors (bad inputs, preconditions) are reported via std::domain_error.
// The classes below distinguish numerical failures from bad inputs so the CLI
// can map them to distinct exit codes.

/// An evaluator produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver failed to converge within its iteration budget.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature rule failed to reach its target accuracy.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sel
