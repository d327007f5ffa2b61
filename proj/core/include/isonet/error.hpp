#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace isonet {

enum class ErrorKind {
  ZeroDivision,
  DegeneratePoint,
  PointAtInfinity,
  CoincidentPoints,
  SingularMatrix,
  DegenerateQuad,
  NotFactorizable,
  NotIsothermic,
  NotChristoffelPair,
  ClosureFailure,
  SingularLambda,
  DegenerateImage,
  BadInitialPoint,
  DegenerateConfiguration,
  DegenerateDifference,
  BadBasePoint,
  BoundaryHit,
  ZeroDenominator,
  InvalidArgument,
  ParseError,
  KindMismatch,
  IoError,
};

const char* to_string(ErrorKind kind);

// Short decimal rendering of a residual for diagnostics ("%.3g").
std::string format_residual(double x);

// Exit-code class used by the command line tool.
enum class ErrorClass { Input, Numerical };
ErrorClass classify_error(ErrorKind kind);

struct GridIndex {
  int m = 0;
  int n = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::optional<GridIndex> where = std::nullopt)
      : std::runtime_error(compose(kind, message, where)),
        kind_(kind),
        message_(std::move(message)),
        where_(where) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<GridIndex>& where() const noexcept { return where_; }
  // The message without kind and index.
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string compose(ErrorKind kind, const std::string& message,
                             const std::optional<GridIndex>& where);

  ErrorKind kind_;
  std::string message_;
  std::optional<GridIndex> where_;
};

}  // namespace isonet
