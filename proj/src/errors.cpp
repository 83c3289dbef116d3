#include "horo/errors.hpp"

namespace horo {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::BasePointNotOnCircle: return "BasePointNotOnCircle";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::TruncationUnderflow: return "TruncationUnderflow";
    case ErrorCode::CurveExitsDomain: return "CurveExitsDomain";
    case ErrorCode::QuadratureNonconvergence: return "QuadratureNonconvergence";
    case ErrorCode::PointsDisconnectedAtResolution: return "PointsDisconnectedAtResolution";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonJordanBoundary: return "NonJordanBoundary";
    case ErrorCode::FitDiverged: return "FitDiverged";
    case ErrorCode::InversionDiverged: return "InversionDiverged";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::SelfMapViolation: return "SelfMapViolation";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

bool is_convergence_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::QuadratureNonconvergence:
    case ErrorCode::FitDiverged:
    case ErrorCode::InversionDiverged:
    case ErrorCode::ConvergenceFailure:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace horo
