#include "spectradef/error.hpp"

namespace spectradef {

std::string_view module_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSolution:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotContained:
      return "exact_linalg";
    case ErrorCode::InvalidSpec:
    case ErrorCode::IntegrabilityViolation:
    case ErrorCode::NotClosed:
    case ErrorCode::BasisNotClosed:
    case ErrorCode::UnsupportedScalar:
    case ErrorCode::JacobiViolation:
    case ErrorCode::ModelClosure:
    case ErrorCode::FrameNotHolomorphic:
      return "model";
    case ErrorCode::EquivalenceViolation:
      return "spectral";
    case ErrorCode::NoTrivialCanonical:
    case ErrorCode::NoDomainPath:
      return "obstruction";
    case ErrorCode::HypothesisFailed:
    case ErrorCode::NotSolvable:
      return "deformation";
    case ErrorCode::InvalidArgument:
      return "cli";
  }
  return "unknown";
}

std::string_view name_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IntegrabilityViolation: return "IntegrabilityViolation";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::BasisNotClosed: return "BasisNotClosed";
    case ErrorCode::UnsupportedScalar: return "UnsupportedScalar";
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::ModelClosure: return "ModelClosure";
    case ErrorCode::FrameNotHolomorphic: return "FrameNotHolomorphic";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::NoTrivialCanonical: return "NoTrivialCanonical";
    case ErrorCode::NoDomainPath: return "NoDomainPath";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorSeverity severity_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::EquivalenceViolation:
    case ErrorCode::NotSolvable:
      return ErrorSeverity::Internal;
    case ErrorCode::HypothesisFailed:
    case ErrorCode::NoTrivialCanonical:
    case ErrorCode::NoDomainPath:
    case ErrorCode::FrameNotHolomorphic:
      return ErrorSeverity::Hypothesis;
    default:
      return ErrorSeverity::Input;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(module_of(code)) + "." + std::string(name_of(code)) +
                         (detail.empty() ? std::string() : ": " + detail)),
      code_(code),
      detail_(detail) {}

std::string Error::qualified_name() const {
  return std::string(module_of(code_)) + "." + std::string(name_of(code_));
}

}  // namespace spectradef
