#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shaping {

enum class ErrorKind {
  EmptyCoefficients,
  NotProper,
  ZeroLeadingCoefficient,
  UnsupportedPoleStructure,
  PoleOnImaginaryAxis,
  SamplePointOnPole,
  SingularVandermondeLike,
  IndexNegative,
  TimeOutOfRange,
  QuadratureNotConverged,
  ResonantParameters,
  SingularDenominatorMatrix,
  SingularOperator,
  GridMismatch,
  DegenerateFit,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of the numerics (as opposed to bad input or configuration).
bool is_numeric_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace shaping
