#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectradef {

/// Failure categories raised by the engine. Each belongs to one module and
/// carries a module-qualified name such as "model.IntegrabilityViolation".
enum class ErrorCode {
  // exact_linalg
  NoSolution,
  DimensionMismatch,
  NotContained,
  // model
  InvalidSpec,
  IntegrabilityViolation,
  NotClosed,
  BasisNotClosed,
  UnsupportedScalar,
  JacobiViolation,
  ModelClosure,
  FrameNotHolomorphic,
  // spectral
  EquivalenceViolation,
  // obstruction
  NoTrivialCanonical,
  NoDomainPath,
  // deformation
  HypothesisFailed,
  NotSolvable,
  // cli
  InvalidArgument,
};

/// How the front end should treat an error when choosing an exit status.
enum class ErrorSeverity { Input, Hypothesis, Internal };

std::string_view module_of(ErrorCode code);
std::string_view name_of(ErrorCode code);
ErrorSeverity severity_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  /// "module.Name"
  std::string qualified_name() const;
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace spectradef
