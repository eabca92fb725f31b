#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qnk/complex.hpp"
#include "qnk/surface.hpp"

namespace qnk {

enum class ArcClass { NormalArc, BentCurve, ClosedCurve, OpenArc };
enum class DiskClass { Elementary3, Elementary4, NormalNGon, NonNormal, NonDisk };

const char* to_string(ArcClass c);
const char* to_string(DiskClass c);

/// Symbolic name of an intersection point. Coordinates are always recomputed
/// from the key, so the same point seen from two tets is bit-identical.
///   SurfaceVertex: vertex a of the surface, lattice image ka
///   EdgeFace:      surface edge (a,ka)-(b,kb) crossing complex face c
///   TetEdge:       complex edge c piercing surface triangle a, lattice image ka
struct PointKey {
  enum Type : std::int8_t { SurfaceVertex = 0, EdgeFace = 1, TetEdge = 2 };
  std::int8_t type = SurfaceVertex;
  int a = -1, b = -1, c = -1;
  Shift ka{0, 0, 0}, kb{0, 0, 0};
  auto operator<=>(const PointKey&) const = default;
};

struct BoundaryPoint {
  PointKey key;
  Vec3 pos;
  int edge = -1;  ///< complex edge id for TetEdge points
  int face = -1;  ///< face carrying the segment to the next loop point; -1 on surface boundary
};

struct Arc {
  int face = -1;  ///< complex face id (first tet that saw it)
  ArcClass cls = ArcClass::NormalArc;
  std::vector<Vec3> polyline;  ///< closed curves repeat no point
  std::array<int, 2> end_edges{-1, -1};
  std::array<BoundaryPoint, 2> ends{};
  std::vector<int> components;
};

struct DiskComponent {
  int id = -1;
  int tet = -1;
  std::vector<std::vector<Vec3>> polygons;  ///< clipped sub-mesh, oriented like the surface
  int vertices = 0, edges = 0, faces = 0;
  int euler_char = 0;
  std::vector<std::vector<BoundaryPoint>> loops;
  std::vector<std::vector<int>> loop_arcs;  ///< global arc ids per loop, in loop order
  DiskClass cls = DiskClass::NonDisk;
  int ngon = 0;
  std::array<int, 4> vertex_side{};  ///< side of each local tet vertex w.r.t. the boundary curve
  double area = 0.0;
  Vec3 normal_sum;  ///< area-weighted normal
  bool touches_surface_boundary = false;

  /// Loop points that lie on complex edges, in loop order (first loop).
  std::vector<BoundaryPoint> edge_points() const;
};

struct IntersectOptions {
  std::uint64_t seed = 0;
  double rel_tol = 1e-9;       ///< general-position tolerance, relative to the mesh size
  double perturb_rel = 1e-7;   ///< translation magnitude, relative to the mesh size
  int max_attempts = 16;
};

struct IntersectionPattern {
  std::vector<Arc> arcs;
  std::vector<DiskComponent> components;
  std::vector<std::vector<int>> tet_components;
  SurfaceMesh surface;  ///< the surface actually intersected (after perturbation)
  Vec3 perturbation;
  double perturbation_magnitude = 0.0;
  int perturbation_attempts = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double tolerance = 0.0;
  double surface_area = 0.0;
  double clipped_area = 0.0;
  int euler_sum = 0;        ///< sum of component Euler characteristics
  int glued_arcs = 0;       ///< distinct non-closed arcs
  int edge_points = 0;      ///< distinct surface/1-skeleton crossings
  bool closed_ambient = false;

  /// chi of the surface recovered from the pieces: sum chi - arcs + edge points.
  int euler_audit() const { return euler_sum - glued_arcs + edge_points; }
};

/// Clips the surface by every tet, collects arcs and components and classifies them.
/// Throws NonManifoldSurface, PerturbationFailed.
IntersectionPattern intersect(const SurfaceMesh& s, const Complex3& c, const IntersectOptions& opt = {});

void classify_arcs(IntersectionPattern& p);
void classify_components(IntersectionPattern& p, const Complex3& c);

struct Violation {
  std::string kind;  ///< NonDisk, NonElementary, ClosedCurve, OpenArc, PeripheralBentCurve
  int component = -1;
  int arc = -1;
  std::string detail;
};

struct QuasiNormalReport {
  bool holds = true;
  std::vector<Violation> witnesses;
};

QuasiNormalReport is_quasi_normal(const IntersectionPattern& p);
QuasiNormalReport is_internally_quasi_normal(const IntersectionPattern& p, const Complex3& c);

struct TamenessReport {
  int component = -1;
  int face = -1;  ///< first face (local order) the disk is a graph over, -1 if none
  bool is_graph = false;
  bool has_corner = false;
  std::vector<int> graph_faces;
};

/// Graph test over each face of the component's tet plus corner detection.
TamenessReport disk_tameness(const DiskComponent& d, const Complex3& c, int samples = 64);
/// One report per NonNormal disk.
std::vector<TamenessReport> check_tameness(const IntersectionPattern& p, const Complex3& c, int samples = 64);

struct Cylinder {
  std::array<int, 2> disks{};
  std::array<int, 2> arcs{};
  int face = -1;
};

std::vector<Cylinder> find_cylinders(const IntersectionPattern& p, const Complex3& c, int samples = 64);

/// Canonical form of a point key under the lattice identification of the complex.
PointKey normalize_key(const PointKey& k, const Complex3& c);

}  // namespace qnk
