#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnk {

enum class ErrorKind {
  InvalidInput,
  IoError,
  IndexOutOfRange,
  DuplicateSimplex,
  ImproperIntersection,
  DegenerateTet,
  DegenerateSimplex,
  InconsistentMidpoint,
  NonManifoldSurface,
  PerturbationFailed,
  DegenerateSpan,
  NotAGraph,
  SelfIntersectingRegion,
  GluingMismatch,
  PointNotOnEdge,
  EmptyMesh,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this exception; `kind()` is stable
/// and is what the CLI serializes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qnk
