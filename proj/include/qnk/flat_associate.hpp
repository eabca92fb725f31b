#pragma once

#include <array>
#include <map>
#include <vector>

#include "qnk/complex.hpp"
#include "qnk/intersection.hpp"
#include "qnk/surface.hpp"

namespace qnk {

enum class FlatKind { Tri3, QuadCone, FaceRegion, CornerCap };
const char* to_string(FlatKind k);

using Triangle = std::array<Vec3, 3>;

struct FlatTriangle {
  Triangle p;       ///< coordinates in the chart of the source tet
  Tri v{};          ///< indices into FlatAssociateSurface::vertices
  int tet = -1;
  int component = -1;
  FlatKind kind = FlatKind::Tri3;
  int region = -1;  ///< face region id for FaceRegion and CornerCap triangles
};

struct FlatRegion {
  int id = -1;
  int face = -1;
  std::vector<Vec3> boundary;
  std::vector<int> components;  ///< NonNormal disks sharing this region
  int multiplicity() const { return static_cast<int>(components.size()); }
};

struct GluingAudit {
  bool ok = true;
  int segments = 0;   ///< distinct boundary segments checked
  int unmatched = 0;  ///< segments not seen exactly twice
};

struct FlatAssociateSurface {
  AmbientModel ambient;
  std::vector<Vec3> vertices;  ///< shared vertices, reduced to the period cell on the torus
  std::vector<FlatTriangle> triangles;
  std::vector<FlatRegion> regions;
  std::map<int, int> multiplicity;  ///< region id -> number of disks
  GluingAudit gluing;

  SurfaceMesh to_mesh() const;
};

/// 3-gon: the triangle on its edge points. 4-gon: cone from the centroid.
/// Throws DegenerateSpan.
std::vector<Triangle> flat_disk_elementary(const DiskComponent& d);

struct FlatRegionPlan {
  int face = -1;
  std::vector<BoundaryPoint> points;          ///< region polygon, loop order
  std::vector<std::array<int, 2>> corners;    ///< loop indices (p1, p3) of capped corners
  std::vector<int> corner_vertices;           ///< complex vertex separated by each corner
};

/// Region of `face` spanned by the disk's edge points on the edges of that face,
/// with corners capped. Throws NotAGraph, SelfIntersectingRegion.
FlatRegionPlan plan_flat_region(const DiskComponent& d, const Complex3& c, int face, int samples = 64);
std::vector<Triangle> flat_disk_nonnormal(const DiskComponent& d, const Complex3& c, int face, int samples = 64);

/// Graph face used for the flat associate: the one carrying the most edge points,
/// lowest local index on ties. -1 if the disk is not a graph.
int flat_face(const DiskComponent& d, const Complex3& c, int samples = 64);

/// Throws InvalidInput if the pattern is not (internally) quasi-normal, NotAGraph,
/// SelfIntersectingRegion, GluingMismatch.
FlatAssociateSurface build_flat_associate(const IntersectionPattern& p, const Complex3& c, int samples = 64);

double surface_area(const FlatAssociateSurface& f);
double multiple_area(const FlatAssociateSurface& f);

}  // namespace qnk
