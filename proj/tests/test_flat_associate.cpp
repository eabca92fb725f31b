#include <cmath>
#include <functional>

#include "doctest.h"
#include "qnk/error.hpp"
#include "qnk/fixtures.hpp"
#include "qnk/flat_associate.hpp"

using namespace qnk;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

DiskComponent disk_with_points(DiskClass cls, const std::vector<Vec3>& pts) {
  DiskComponent d;
  d.cls = cls;
  d.loops.resize(1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    BoundaryPoint bp;
    bp.pos = pts[i];
    bp.edge = static_cast<int>(i);
    d.loops[0].push_back(bp);
  }
  return d;
}

}  // namespace

TEST_CASE("elementary flat disks") {
  auto tri = flat_disk_elementary(disk_with_points(DiskClass::Elementary3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  REQUIRE(tri.size() == 1);
  CHECK(triangle_area(tri[0][0], tri[0][1], tri[0][2]) == doctest::Approx(0.5));

  auto flat = flat_disk_elementary(disk_with_points(DiskClass::Elementary4, {{0, 0, 0}, {2, 0, 0}, {2, 1, 0}, {0, 1, 0}}));
  REQUIRE(flat.size() == 4);
  double a = 0.0;
  for (auto& t : flat) a += triangle_area(t[0], t[1], t[2]);
  CHECK(a == doctest::Approx(2.0));

  // cone over a skew quad against a fan from the centroid computed by hand
  const std::vector<Vec3> q = {{0, 0, 0}, {1, 0, 0.3}, {1, 1, 0}, {0, 1, 0.3}};
  auto skew = flat_disk_elementary(disk_with_points(DiskClass::Elementary4, q));
  double cone = 0.0;
  for (auto& t : skew) cone += triangle_area(t[0], t[1], t[2]);
  const Vec3 g{0.5, 0.5, 0.15};
  double oracle = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec3 u = q[i] - g, v = q[(i + 1) % 4] - g;
    const double cx = u.y * v.z - u.z * v.y, cy = u.z * v.x - u.x * v.z, cz = u.x * v.y - u.y * v.x;
    oracle += 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
  }
  CHECK(cone == doctest::Approx(oracle).epsilon(1e-14));
  // and it is not either diagonal split
  const double split1 = triangle_area(q[0], q[1], q[2]) + triangle_area(q[0], q[2], q[3]);
  const double split2 = triangle_area(q[1], q[2], q[3]) + triangle_area(q[1], q[3], q[0]);
  CHECK(cone != doctest::Approx(split1));
  CHECK(cone != doctest::Approx(split2));

  CHECK(kind_of([] {
          flat_disk_elementary(disk_with_points(DiskClass::Elementary3, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}));
        }) == ErrorKind::DegenerateSpan);
}

TEST_CASE("flat associate of the plane in the torus") {
  auto c = fixtures::kuhn_grid(2, 1.0, true);
  auto p = intersect(fixtures::torus_plane(3, 0.3), c);
  auto f = build_flat_associate(p, c);
  CHECK(f.gluing.ok);
  CHECK(f.gluing.segments > 0);
  CHECK(f.regions.empty());
  auto topo = surface_topology(f.to_mesh());
  CHECK(topo.boundary_edges == 0);
  CHECK(topo.euler_characteristic == 0);
  CHECK(multiple_area(f) == doctest::Approx(surface_area(f)));
  // the plane is already flat in every tet
  CHECK(surface_area(f) == doctest::Approx(1.0).epsilon(1e-10));
  for (auto& v : f.vertices) CHECK(v.z == doctest::Approx(0.3));
}

TEST_CASE("single corner triangle") {
  auto sc = fixtures::corner_triangle_scene();
  auto p = intersect(sc.surface, sc.complex);
  auto f = build_flat_associate(p, sc.complex);
  REQUIRE(f.triangles.size() == 1);
  CHECK(f.triangles[0].kind == FlatKind::Tri3);
  const auto tp = sc.complex.tet_points(0);
  for (const Vec3& v : f.triangles[0].p) {
    bool on_edge = false;
    for (int k = 1; k < 4; ++k) on_edge |= distance(v, lerp(tp[0], tp[k], 0.3)) < 1e-12;
    CHECK(on_edge);
  }
}

TEST_CASE("non-normal flat regions") {
  auto sc = fixtures::corner_disk_scene();
  auto p = intersect(sc.surface, sc.complex);
  const auto& d = p.components[0];
  const int face = flat_face(d, sc.complex);
  REQUIRE(face >= 0);
  CHECK(sc.complex.faces()[face] == Tri{0, 1, 2});
  auto plan = plan_flat_region(d, sc.complex, face);
  CHECK(plan.points.size() == 4);
  REQUIRE(plan.corners.size() == 1);
  CHECK(plan.corner_vertices[0] == 0);
  auto f = build_flat_associate(p, sc.complex);
  int caps = 0, region = 0;
  double area = 0.0;
  for (auto& t : f.triangles) {
    caps += t.kind == FlatKind::CornerCap;
    region += t.kind == FlatKind::FaceRegion;
    area += triangle_area(t.p[0], t.p[1], t.p[2]);
  }
  CHECK(caps == 1);
  CHECK(region == 2);
  // the polygon (0,0,0) (0.2,0,0) (0.7,0.3,0) (0.3,0.7,0) (0,0.2,0) by the shoelace formula
  const double xs[] = {0, 0.2, 0.7, 0.3, 0}, ys[] = {0, 0, 0.3, 0.7, 0.2};
  double shoelace = 0.0;
  for (int i = 0; i < 5; ++i) shoelace += xs[i] * ys[(i + 1) % 5] - xs[(i + 1) % 5] * ys[i];
  CHECK(area == doctest::Approx(std::abs(shoelace) / 2).epsilon(1e-6));

  auto lune = fixtures::lune_scene();
  auto lp = intersect(lune.surface, lune.complex);
  auto lf = build_flat_associate(lp, lune.complex);
  CHECK(lf.triangles.empty());
  REQUIRE(lf.regions.size() == 1);
  CHECK(lf.regions[0].boundary.size() == 2);

  DiskComponent pinched = lp.components[0];
  auto pts = pinched.edge_points();
  for (auto& bp : pinched.loops[0])
    if (bp.edge >= 0) bp.pos = pts[0].pos;
  CHECK(kind_of([&] { plan_flat_region(pinched, lune.complex, flat_face(lp.components[0], lune.complex)); }) ==
        ErrorKind::SelfIntersectingRegion);

  auto fold = fixtures::fold_scene();
  auto fp = intersect(fold.surface, fold.complex);
  CHECK(kind_of([&] { flat_disk_nonnormal(fp.components[0], fold.complex, fold.complex.tet_faces(0)[0]); }) ==
        ErrorKind::NotAGraph);
  CHECK(kind_of([&] { build_flat_associate(fp, fold.complex); }) == ErrorKind::NotAGraph);
}

TEST_CASE("shared regions carry multiplicity") {
  auto sc = fixtures::lune_scene();
  auto p = intersect(sc.surface, sc.complex);
  // a second disk over the same region, as in a cylinder seen from both sides
  auto q = p;
  q.components.push_back(q.components[0]);
  q.components.back().id = 1;
  auto f = build_flat_associate(q, sc.complex);
  REQUIRE(f.regions.size() == 1);
  CHECK(f.multiplicity.at(0) == 2);
  CHECK(f.regions[0].components == std::vector<int>{0, 1});

  FlatAssociateSurface s;
  FlatTriangle big;
  big.p = {Vec3{0, 0, 0}, Vec3{1.6, 0, 0}, Vec3{0, 1, 0}};
  FlatTriangle small;
  small.p = {Vec3{0, 0, 1}, Vec3{0.4, 0, 1}, Vec3{0, 1, 1}};
  small.region = 5;
  s.triangles = {big, small};
  s.multiplicity[5] = 3;
  CHECK(surface_area(s) == doctest::Approx(1.0));
  CHECK(multiple_area(s) == doctest::Approx(1.4));
}

TEST_CASE("flat associate needs a quasi-normal pattern") {
  auto sc = fixtures::octagon_scene();
  auto p = intersect(sc.surface, sc.complex);
  CHECK(kind_of([&] { build_flat_associate(p, sc.complex); }) == ErrorKind::InvalidInput);
}
