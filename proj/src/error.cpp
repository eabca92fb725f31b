#include "qnk/error.hpp"

namespace qnk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorKind::ImproperIntersection: return "ImproperIntersection";
    case ErrorKind::DegenerateTet: return "DegenerateTet";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::InconsistentMidpoint: return "InconsistentMidpoint";
    case ErrorKind::NonManifoldSurface: return "NonManifoldSurface";
    case ErrorKind::PerturbationFailed: return "PerturbationFailed";
    case ErrorKind::DegenerateSpan: return "DegenerateSpan";
    case ErrorKind::NotAGraph: return "NotAGraph";
    case ErrorKind::SelfIntersectingRegion: return "SelfIntersectingRegion";
    case ErrorKind::GluingMismatch: return "GluingMismatch";
    case ErrorKind::PointNotOnEdge: return "PointNotOnEdge";
    case ErrorKind::EmptyMesh: return "EmptyMesh";
  }
  return "Unknown";
}

}  // namespace qnk
