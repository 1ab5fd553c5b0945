#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smlab {

enum class ErrorCode {
  NotHermitian,
  NonSquare,
  NonFinite,
  ShapeMismatch,
  BadLayout,
  OutOfWindow,
  ZeroLambda,
  WeightViolation,
  RangeTooLarge,
  WindowTooSmall,
  InvalidMetric,
  EmptySupport,
  InvalidMeasure,
  NotTightInWindow,
  NotSPD,
  DegenerateTrace,
  ConfigInvalid,
  CutoffTooSmall,
  DepthTooLarge,
  NotSquarefree,
  ModeEscape,
  ZeroMode,
  LengthMismatch,
  SingletonCode,
  TooLarge,
  InvalidCode,
  UnknownExperiment,
};

std::string_view to_string(ErrorCode code);

// Every precondition failure in the library is reported through this type.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw LabError(code, what);
}

}  // namespace smlab
