#pragma once

#include <array>

#include "qnk/complex.hpp"
#include "qnk/surface.hpp"

namespace qnk::fixtures {

// ---- complexes

std::array<Vec3, 4> regular_tet_points(double edge = 1.0);
/// Five edges rho, the edge v0v1 of length sqrt(2)*rho.
std::array<Vec3, 4> almost_regular_tet_points(double rho = 1.0);
/// Pancake: unit equilateral base, apex `height` above its centroid.
std::array<Vec3, 4> needle_tet_points(double height = 1e-6);

Complex3 single_tet(const std::array<Vec3, 4>& p);
Complex3 regular_tet(double edge = 1.0);
/// Regular tet on alternate corners of the cube [-1,1]^3.
Complex3 cube_corner_tet();
/// Regular tet plus its mirror image through the base face.
Complex3 two_glued_tets();
/// n^3 cubes of side size/n, six tets each around the main diagonal.
Complex3 kuhn_grid(int n, double size = 1.0, bool torus = false);
/// Barycentric subdivision (24 children per tet). Negative control only.
Complex3 barycentric_subdivide(const Complex3& c);

// ---- surfaces

/// Periodic grid of the plane z = height in the unit-period torus; vertices at
/// ((i+0.5)/n, (j+0.5)/n) so no vertex sits on a dyadic grid plane.
SurfaceMesh torus_plane(int n, double height = 0.3, double period = 1.0);
SurfaceMesh icosphere(const Vec3& center, double radius, int refinements);
/// Part of a sphere with polar angle <= cap_angle around `axis`, triangulated in
/// rings. Boundary is the rim circle.
SurfaceMesh sphere_cap(const Vec3& center, double radius, const Vec3& axis, double cap_angle,
                       int rings);
SurfaceMesh single_triangle(const Vec3& a, const Vec3& b, const Vec3& c);
/// Fan of triangles from `apex` over the closed polygon.
SurfaceMesh cone(const Vec3& apex, const std::vector<Vec3>& polygon);
/// Rectangle patch [x0,x1]x[y0,y1] on the plane through `origin` spanned by u, v.
SurfaceMesh planar_patch(const Vec3& origin, const Vec3& u, const Vec3& v, int nu, int nv);

// ---- classification scenes

struct Scene {
  Complex3 complex;
  SurfaceMesh surface;
};

/// Icosphere turned by a fixed generic rotation so no vertex sits on a
/// coordinate plane through the center.
SurfaceMesh tilted_sphere(const Vec3& center, double radius, int refinements);

/// Triangle cutting off vertex 0 of the cube-corner tet.
Scene corner_triangle_scene();
/// Plane x = 0.1 through the cube-corner tet: splits its vertices 2|2.
Scene quad_scene();
/// Cone over the connected normal curve of length 8.
Scene octagon_scene();
/// Dome over the base face of the regular tet around edge v0v1: one disk with two bent curves.
Scene lune_scene();
/// Bowl crossing the shared face of two glued tets in a bent curve around edge v0v1.
Scene cylinder_scene();
/// Non-normal disk whose boundary turns around a tet vertex with two normal arcs.
Scene corner_disk_scene();
/// Z-shaped sheet folding back over every face of the cube-corner tet.
Scene fold_scene();
/// Sphere poking through one face: the shared face of two glued tets, or a
/// boundary face of a single tet.
Scene closed_cap_scene(bool through_shared_face);
/// Small sphere centered on a cube edge of the one-cube Kuhn grid: bent curves on
/// interior faces that end on a boundary edge.
Scene peripheral_bent_scene();

}  // namespace qnk::fixtures
