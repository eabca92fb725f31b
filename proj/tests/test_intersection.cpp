#include <cmath>

#include "doctest.h"
#include "qnk/error.hpp"
#include "qnk/fixtures.hpp"
#include "qnk/intersection.hpp"

using namespace qnk;

TEST_CASE("plane in the torus cuts every tet in disks") {
  auto c = fixtures::kuhn_grid(2, 1.0, true);
  auto s = fixtures::torus_plane(3, 0.3);
  auto p = intersect(s, c);
  CHECK(p.closed_ambient);
  CHECK(p.perturbation_attempts == 0);
  REQUIRE(!p.components.empty());
  for (auto& d : p.components) {
    CHECK(d.euler_char == 1);
    CHECK(d.loops.size() == 1);
    CHECK((d.cls == DiskClass::Elementary3 || d.cls == DiskClass::Elementary4));
  }
  CHECK(p.euler_audit() == 0);
  CHECK(p.clipped_area == doctest::Approx(p.surface_area).epsilon(1e-9));
  CHECK(p.surface_area == doctest::Approx(1.0));
  CHECK(is_quasi_normal(p).holds);
}

TEST_CASE("surface away from the complex") {
  auto c = fixtures::regular_tet();
  auto s = fixtures::icosphere({5, 5, 5}, 0.5, 1);
  auto p = intersect(s, c);
  CHECK(p.components.empty());
  CHECK(p.arcs.empty());
  CHECK(is_quasi_normal(p).holds);
}

TEST_CASE("sphere inside one tet is not a disk") {
  auto c = fixtures::cube_corner_tet();
  auto s = fixtures::icosphere({0.01, 0.02, -0.015}, 0.2, 1);
  auto p = intersect(s, c);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].euler_char == 2);
  CHECK(p.components[0].cls == DiskClass::NonDisk);
  auto r = is_quasi_normal(p);
  CHECK(!r.holds);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].kind == "NonDisk");
}

TEST_CASE("corner triangle and quad") {
  auto c = fixtures::cube_corner_tet();
  auto quad = fixtures::planar_patch({0.1, -1.5, -1.5}, {0, 2.8, 0}, {0, 0, 2.8}, 1, 1);
  auto p = intersect(quad, c);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].cls == DiskClass::Elementary4);
  CHECK(p.arcs.size() == 4);
  for (auto& a : p.arcs) CHECK(a.cls == ArcClass::NormalArc);

  auto tp = c.tet_points(0);
  std::array<Vec3, 3> q;
  for (int k = 0; k < 3; ++k) q[k] = lerp(tp[0], tp[k + 1], 0.3);
  const Vec3 g = (q[0] + q[1] + q[2]) / 3.0;
  auto tri = fixtures::single_triangle(g + (q[0] - g) * 1.2, g + (q[1] - g) * 1.2, g + (q[2] - g) * 1.2);
  auto pt = intersect(tri, c);
  REQUIRE(pt.components.size() == 1);
  CHECK(pt.components[0].cls == DiskClass::Elementary3);
  CHECK(pt.edge_points == 3);
  CHECK(is_quasi_normal(pt).holds);
}

namespace {

std::vector<std::string> kinds(const QuasiNormalReport& r) {
  std::vector<std::string> k;
  for (auto& w : r.witnesses) k.push_back(w.kind);
  return k;
}

int count_class(const IntersectionPattern& p, ArcClass c) {
  int n = 0;
  for (auto& a : p.arcs) n += a.cls == c;
  return n;
}

}  // namespace

TEST_CASE("octagon normal disk") {
  auto sc = fixtures::octagon_scene();
  auto p = intersect(sc.surface, sc.complex);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].cls == DiskClass::NormalNGon);
  CHECK(p.components[0].ngon == 8);
  auto r = is_quasi_normal(p);
  CHECK(!r.holds);
  CHECK(kinds(r) == std::vector<std::string>{"NonElementary"});
}

TEST_CASE("bent curves make a non-normal disk") {
  auto sc = fixtures::lune_scene();
  auto p = intersect(sc.surface, sc.complex);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].cls == DiskClass::NonNormal);
  CHECK(count_class(p, ArcClass::BentCurve) == 2);
  for (auto& a : p.arcs) CHECK(a.end_edges[0] == a.end_edges[1]);
  CHECK(is_quasi_normal(p).holds);
  auto t = disk_tameness(p.components[0], sc.complex);
  CHECK(t.is_graph);
  CHECK(!t.has_corner);
}

TEST_CASE("corner of a non-normal disk") {
  auto sc = fixtures::corner_disk_scene();
  auto p = intersect(sc.surface, sc.complex);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].cls == DiskClass::NonNormal);
  CHECK(count_class(p, ArcClass::BentCurve) == 1);
  CHECK(count_class(p, ArcClass::NormalArc) == 4);
  auto t = check_tameness(p, sc.complex);
  REQUIRE(t.size() == 1);
  CHECK(t[0].is_graph);
  CHECK(t[0].has_corner);
}

TEST_CASE("fold is not a graph over any face") {
  auto sc = fixtures::fold_scene();
  auto p = intersect(sc.surface, sc.complex);
  REQUIRE(p.components.size() == 1);
  REQUIRE(p.components[0].cls == DiskClass::NonNormal);
  auto t = disk_tameness(p.components[0], sc.complex);
  CHECK(!t.is_graph);
  CHECK(t.face == -1);
  CHECK(t.graph_faces.empty());
}

TEST_CASE("cylinder pair") {
  auto sc = fixtures::cylinder_scene();
  auto p = intersect(sc.surface, sc.complex);
  REQUIRE(p.components.size() == 2);
  for (auto& d : p.components) CHECK(d.cls == DiskClass::NonNormal);
  auto cyl = find_cylinders(p, sc.complex);
  REQUIRE(cyl.size() == 1);
  CHECK(cyl[0].disks == std::array<int, 2>{0, 1});
  const Tri& shared = sc.complex.faces()[cyl[0].face];
  CHECK(shared == Tri{0, 1, 2});

  // the same two disks, but their bent curves share only one endpoint
  auto q = p;
  const int a = cyl[0].arcs[0];
  Arc other = q.arcs[a];
  other.ends[1].key.ka = {0, 0, 7};
  other.components = {q.arcs[a].components[1]};
  q.arcs[a].components = {q.arcs[a].components[0]};
  q.arcs.push_back(other);
  CHECK(find_cylinders(q, sc.complex).empty());

  auto plane = intersect(fixtures::torus_plane(3, 0.3), fixtures::kuhn_grid(2, 1.0, true));
  CHECK(find_cylinders(plane, fixtures::kuhn_grid(2, 1.0, true)).empty());
}

TEST_CASE("closed curves in faces") {
  auto inner = fixtures::closed_cap_scene(true);
  auto p = intersect(inner.surface, inner.complex);
  REQUIRE(p.arcs.size() == 1);
  CHECK(p.arcs[0].cls == ArcClass::ClosedCurve);
  CHECK(inner.complex.face_label(p.arcs[0].face) == FaceLabel::Internal);
  auto r = is_quasi_normal(p);
  CHECK(!r.holds);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].kind == "ClosedCurve");
  CHECK(r.witnesses[0].arc == 0);
  CHECK(!is_internally_quasi_normal(p, inner.complex).holds);

  auto outer = fixtures::closed_cap_scene(false);
  auto q = intersect(outer.surface, outer.complex);
  REQUIRE(q.arcs.size() == 1);
  CHECK(q.arcs[0].cls == ArcClass::ClosedCurve);
  CHECK(outer.complex.face_label(q.arcs[0].face) == FaceLabel::Boundary);
  CHECK(!is_quasi_normal(q).holds);
  CHECK(is_internally_quasi_normal(q, outer.complex).holds);
}

TEST_CASE("bent curve ending on a boundary edge of a peripheral face") {
  auto sc = fixtures::peripheral_bent_scene();
  auto p = intersect(sc.surface, sc.complex);
  CHECK(is_quasi_normal(p).holds);
  auto r = is_internally_quasi_normal(p, sc.complex);
  CHECK(!r.holds);
  REQUIRE(!r.witnesses.empty());
  for (auto& w : r.witnesses) {
    CHECK(w.kind == "PeripheralBentCurve");
    const Arc& a = p.arcs[w.arc];
    CHECK(a.cls == ArcClass::BentCurve);
    CHECK(sc.complex.face_label(a.face) == FaceLabel::PeripheralOnly);
    CHECK(sc.complex.edge_on_boundary(a.end_edges[0]));
  }
}

TEST_CASE("arc classification from end edges") {
  IntersectionPattern p;
  Arc a;
  a.face = 0;
  a.end_edges = {0, 1};
  p.arcs.push_back(a);
  a.end_edges = {2, 2};
  p.arcs.push_back(a);
  a.end_edges = {-1, -1};
  p.arcs.push_back(a);
  classify_arcs(p);
  CHECK(p.arcs[0].cls == ArcClass::NormalArc);
  CHECK(p.arcs[1].cls == ArcClass::BentCurve);
  CHECK(p.arcs[2].cls == ArcClass::ClosedCurve);
}

TEST_CASE("intersection is deterministic and records the perturbation") {
  auto sc = fixtures::corner_disk_scene();
  IntersectOptions opt;
  opt.seed = 42;
  auto a = intersect(sc.surface, sc.complex, opt);
  auto b = intersect(sc.surface, sc.complex, opt);
  CHECK(a.perturbation_attempts >= 1);
  CHECK(a.perturbation_magnitude == doctest::Approx(1e-7 * a.lambda));
  CHECK(a.perturbation == b.perturbation);
  REQUIRE(a.components.size() == b.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    CHECK(a.components[i].polygons == b.components[i].polygons);
  }
  opt.max_attempts = 0;
  CHECK_THROWS_AS(intersect(sc.surface, sc.complex, opt), Error);
}

TEST_CASE("non-manifold surface is rejected") {
  SurfaceMesh s;
  s.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}};
  s.triangles = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
  try {
    intersect(s, fixtures::regular_tet());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonManifoldSurface);
  }
}
