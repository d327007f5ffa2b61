#include "isonet/error.hpp"

#include <cstdio>

namespace isonet {

std::string format_residual(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDivision: return "ZeroDivision";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::PointAtInfinity: return "PointAtInfinity";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DegenerateQuad: return "DegenerateQuad";
    case ErrorKind::NotFactorizable: return "NotFactorizable";
    case ErrorKind::NotIsothermic: return "NotIsothermic";
    case ErrorKind::NotChristoffelPair: return "NotChristoffelPair";
    case ErrorKind::ClosureFailure: return "ClosureFailure";
    case ErrorKind::SingularLambda: return "SingularLambda";
    case ErrorKind::DegenerateImage: return "DegenerateImage";
    case ErrorKind::BadInitialPoint: return "BadInitialPoint";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::DegenerateDifference: return "DegenerateDifference";
    case ErrorKind::BadBasePoint: return "BadBasePoint";
    case ErrorKind::BoundaryHit: return "BoundaryHit";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorClass classify_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::KindMismatch:
    case ErrorKind::IoError:
    case ErrorKind::NotFactorizable:
    case ErrorKind::NotIsothermic:
    case ErrorKind::NotChristoffelPair:
    case ErrorKind::BadInitialPoint:
    case ErrorKind::BadBasePoint:
    case ErrorKind::SingularLambda:
      return ErrorClass::Input;
    default:
      return ErrorClass::Numerical;
  }
}

std::string Error::compose(ErrorKind kind, const std::string& message,
                           const std::optional<GridIndex>& where) {
  std::string out = to_string(kind);
  if (where) {
    out += " at (" + std::to_string(where->m) + "," + std::to_string(where->n) + ")";
  }
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace isonet
