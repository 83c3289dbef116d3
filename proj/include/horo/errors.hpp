#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace horo {

enum class ErrorCode {
  PointOutsideDomain,
  BasePointNotOnCircle,
  SingularPoint,
  InvalidSequence,
  TruncationUnderflow,
  CurveExitsDomain,
  QuadratureNonconvergence,
  PointsDisconnectedAtResolution,
  InvalidInterval,
  InvalidParameter,
  NonJordanBoundary,
  FitDiverged,
  InversionDiverged,
  NotAnAutomorphism,
  SelfMapViolation,
  ConvergenceFailure,
  FormatError,
};

std::string_view error_name(ErrorCode code);

// Numerical non-convergence, as opposed to a violated precondition.
bool is_convergence_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace horo
