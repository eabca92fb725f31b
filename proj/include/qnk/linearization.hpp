#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "qnk/complex.hpp"
#include "qnk/flat_associate.hpp"
#include "qnk/intersection.hpp"
#include "qnk/surface.hpp"

namespace qnk {

/// A possibly curved edge given as a polyline from a to b.
struct ParamCurveEdge {
  int edge_id = -1;
  std::vector<Vec3> polyline;
  std::vector<double> arclength;  ///< cumulative, arclength.front() == 0
  std::array<Vec3, 2> straight_span;

  static ParamCurveEdge from_polyline(int edge_id, std::vector<Vec3> pts);
  double length() const { return arclength.empty() ? 0.0 : arclength.back(); }
  /// Largest distance from the polyline to the chord.
  double sagitta() const;
};

using CurvedEdgeTable = std::vector<ParamCurveEdge>;

/// Relative arclength of x along the polyline. Throws PointNotOnEdge when x is
/// farther than tol * length from it.
double edge_parameter(const Vec3& x, const ParamCurveEdge& e, double tol = 1e-9);
/// Point of the straight edge at the same relative distance from a as x along the curve.
Vec3 project_point_to_edge(const Vec3& x, const ParamCurveEdge& e, double tol = 1e-9);

/// Every edge as a two-point polyline.
CurvedEdgeTable straight_edge_table(const Complex3& c);
/// Edges bent by `warp` (vertices must be fixed by it), sampled at `segments` pieces.
CurvedEdgeTable warp_edge_table(const Complex3& c, const std::function<Vec3(const Vec3&)>& warp, int segments);

/// Same combinatorics and vertices with straight edges. Throws InvalidInput when
/// the table does not cover the edges or its endpoints disagree with the vertices.
Complex3 linearize_complex(const Complex3& c, const CurvedEdgeTable& table);

/// 3-gon: one triangle. 4-gon: the diagonal split of smaller area; on a tie the
/// diagonal whose sorted endpoints are lexicographically smaller. Throws DegenerateSpan.
std::vector<Triangle> build_pl_disk(const std::vector<Vec3>& projected);

/// Projected position of every distinct edge point, keyed by its normalized key.
std::map<PointKey, Vec3> project_edge_points(const IntersectionPattern& p, const Complex3& c,
                                             const CurvedEdgeTable& table);

/// PL surface in the linearized complex. Throws GluingMismatch.
SurfaceMesh build_pl_surface(const IntersectionPattern& p, const Complex3& c_hat, const CurvedEdgeTable& table,
                             int samples = 64);
SurfaceMesh build_pl_surface(const IntersectionPattern& p, const Complex3& c_hat, int samples = 64);

}  // namespace qnk
