#ifndef QCSPEC_ERRORS_HPP
#define QCSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcspec {

/// Error categories used across the library. Each maps to one failure
/// mode of the numerical pipeline rather than to a C++-level condition.
enum class ErrorKind {
  PointOutsideSource,
  DerivativeSingularity,
  DegenerateJacobian,
  InvalidExponent,
  EmptyInterval,
  OutOfValidity,
  DivergentIntegral,
  EmptyFeasibleSet,
  SolverFailure,
  DegenerateTriangle,
  CheckFailed,
  ConfigError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcspec

#endif
