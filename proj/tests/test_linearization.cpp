#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qnk/error.hpp"
#include "qnk/fixtures.hpp"
#include "qnk/linearization.hpp"

using namespace qnk;

namespace {

ParamCurveEdge quarter_circle(int segments) {
  std::vector<Vec3> pts;
  for (int k = 0; k <= segments; ++k) {
    const double a = std::numbers::pi / 2 * k / segments;
    pts.push_back({std::cos(a), std::sin(a), 0});
  }
  return ParamCurveEdge::from_polyline(0, pts);
}

}  // namespace

TEST_CASE("projection by relative arclength") {
  auto e = ParamCurveEdge::from_polyline(3, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  CHECK(distance(project_point_to_edge({1, 0, 0}, e), Vec3{0.5, 0.5, 0}) < 1e-15);
  CHECK(distance(project_point_to_edge({0, 0, 0}, e), Vec3{0, 0, 0}) == 0.0);
  CHECK(distance(project_point_to_edge({1, 1, 0}, e), Vec3{1, 1, 0}) < 1e-15);

  // quarter of the arc: fine polyline, arclength by integration
  const int n = 4096;
  auto arc = quarter_circle(n);
  const Vec3 x = arc.polyline[n / 4];
  double s = 0.0;
  for (int k = 0; k < n / 4; ++k) s += distance(arc.polyline[k], arc.polyline[k + 1]);
  const double t = s / arc.length();
  CHECK(t == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(distance(project_point_to_edge(x, arc), lerp(Vec3{1, 0, 0}, Vec3{0, 1, 0}, 0.25)) < 1e-12);

  // monotone in the curve parameter
  double prev = -1.0;
  for (int k = 0; k <= n; k += 97) {
    const double tk = edge_parameter(arc.polyline[k], arc);
    CHECK(tk > prev);
    prev = tk;
  }

  try {
    project_point_to_edge({0.5, 0.5, 0.5}, arc);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::PointNotOnEdge);
  }
}

TEST_CASE("linearizing complexes") {
  auto c = fixtures::kuhn_grid(2);
  auto straight = linearize_complex(c, straight_edge_table(c));
  CHECK(straight.vertices() == c.vertices());
  CHECK(straight.tets() == c.tets());

  // curved cube: bend every edge, the sagitta shrinks with the edge length
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {2, 4, 8}) {
    // bends edges of the n-grid and fixes its vertices
    auto warp = [n](const Vec3& p) {
      const double w = std::numbers::pi * n;
      return p + Vec3{0, 0.1 / n * std::sin(w * p.x), 0.1 / n * std::sin(w * p.y)};
    };
    auto grid = fixtures::kuhn_grid(n);
    auto table = warp_edge_table(grid, warp, 64);
    auto lin = linearize_complex(grid, table);
    CHECK(lin.vertices() == grid.vertices());
    double worst = 0.0, hd = 0.0;
    for (auto& e : table) {
      worst = std::max(worst, e.sagitta());
      for (auto& p : e.polyline) {
        const Vec3 a = e.straight_span[0], d = e.straight_span[1] - a;
        const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
        hd = std::max(hd, distance(p, a + d * t));
      }
    }
    CHECK(hd <= worst + 1e-15);
    CHECK(worst < prev);
    prev = worst;
  }

  auto bad = straight_edge_table(c);
  bad[0] = ParamCurveEdge::from_polyline(0, {{9, 9, 9}, {1, 1, 1}});
  CHECK_THROWS_AS(linearize_complex(c, bad), Error);
}

TEST_CASE("PL quads take the smaller diagonal split") {
  const double eps = 0.2;
  std::vector<Vec3> q = {{0, 0, 0}, {1, 0, 0}, {1, 1, eps}, {0, 1, 0}};
  auto tris = build_pl_disk(q);
  REQUIRE(tris.size() == 2);
  double area = 0.0;
  for (auto& t : tris) area += triangle_area(t[0], t[1], t[2]);
  const double a02 = triangle_area(q[0], q[1], q[2]) + triangle_area(q[0], q[2], q[3]);
  const double a13 = triangle_area(q[1], q[2], q[3]) + triangle_area(q[1], q[3], q[0]);
  CHECK(a02 != doctest::Approx(a13));
  CHECK(area == doctest::Approx(std::min(a02, a13)).epsilon(1e-15));

  // coplanar: equal areas, the lexicographically smaller diagonal (0,0,0)-(1,1,0)
  std::vector<Vec3> flat = {{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}};
  auto ft = build_pl_disk(flat);
  auto again = build_pl_disk(flat);
  CHECK(ft == again);
  bool has_diag = false;
  for (auto& t : ft) {
    int hits = 0;
    for (auto& v : t) hits += v == Vec3{0, 0, 0} || v == Vec3{1, 1, 0};
    has_diag |= hits == 2;
  }
  CHECK(has_diag);

  CHECK(build_pl_disk({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}).size() == 1);
  CHECK_THROWS_AS(build_pl_disk({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}), Error);
}

TEST_CASE("PL surface of the plane in the torus") {
  auto c = fixtures::kuhn_grid(2, 1.0, true);
  auto p = intersect(fixtures::torus_plane(3, 0.3), c);
  auto pl = build_pl_surface(p, c);
  auto topo = surface_topology(pl);
  CHECK(topo.boundary_edges == 0);
  CHECK(topo.euler_characteristic == 0);
  CHECK(surface_area(pl) == doctest::Approx(1.0).epsilon(1e-10));
  auto f = build_flat_associate(p, c);
  CHECK(surface_area(pl) == doctest::Approx(surface_area(f)).epsilon(1e-12));
}

TEST_CASE("PL surface keeps the Euler characteristic of a capped patch") {
  auto sc = fixtures::corner_disk_scene();
  auto p = intersect(sc.surface, sc.complex);
  auto pl = build_pl_surface(p, sc.complex);
  CHECK(surface_topology(pl).euler_characteristic == p.components[0].euler_char);
}
