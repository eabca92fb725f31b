#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnk/complex.hpp"

namespace qnk {

/// Oriented triangle mesh. In a flat torus the triangles are read through the
/// minimum image: vertices after the first are unwrapped next to it.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Tri> triangles;
  AmbientModel ambient;

  std::array<Vec3, 3> triangle_points(std::size_t t) const;
  Vec3 triangle_normal(std::size_t t) const;  ///< unit
  bool empty() const { return triangles.empty(); }
};

struct SurfaceTopology {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int boundary_edges = 0;
  int euler_characteristic = 0;
  bool consistently_oriented = true;
};

/// Throws NonManifoldSurface on an edge in more than two triangles, a repeated
/// vertex in a triangle or an out-of-range index.
SurfaceTopology surface_topology(const SurfaceMesh& s);

double surface_area(const SurfaceMesh& s);
double max_triangle_diameter(const SurfaceMesh& s);

SurfaceMesh read_off(std::istream& in);
SurfaceMesh read_off_file(const std::string& path);
void write_off(std::ostream& out, const SurfaceMesh& s);
void write_off_file(const std::string& path, const SurfaceMesh& s);

/// Vertices equal after quantization at `tol` are merged; unreferenced vertices dropped.
SurfaceMesh weld_vertices(const SurfaceMesh& s, double tol);

}  // namespace qnk
