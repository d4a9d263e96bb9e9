#include "shaping/error.hpp"

namespace shaping {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyCoefficients: return "EmptyCoefficients";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::UnsupportedPoleStructure: return "UnsupportedPoleStructure";
    case ErrorKind::PoleOnImaginaryAxis: return "PoleOnImaginaryAxis";
    case ErrorKind::SamplePointOnPole: return "SamplePointOnPole";
    case ErrorKind::SingularVandermondeLike: return "SingularVandermondeLike";
    case ErrorKind::IndexNegative: return "IndexNegative";
    case ErrorKind::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::ResonantParameters: return "ResonantParameters";
    case ErrorKind::SingularDenominatorMatrix: return "SingularDenominatorMatrix";
    case ErrorKind::SingularOperator: return "SingularOperator";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::QuadratureNotConverged:
    case ErrorKind::ResonantParameters:
    case ErrorKind::SingularDenominatorMatrix:
    case ErrorKind::SingularOperator:
    case ErrorKind::DegenerateFit:
    case ErrorKind::PoleOnImaginaryAxis:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace shaping
