#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "qnk/error.hpp"
#include "qnk/fixtures.hpp"
#include "qnk/io.hpp"

using namespace qnk;
using namespace qnk::fixtures;

TEST_CASE("complex json round trip") {
  for (const Complex3& c : {regular_tet(), kuhn_grid(2, 1.0, true), two_glued_tets()}) {
    const json j = complex_to_json(c);
    const Complex3 back = complex_from_json(j);
    CHECK(back.vertices() == c.vertices());
    CHECK(back.tets().size() == c.tets().size());
    CHECK(back.ambient().is_torus() == c.ambient().is_torus());
    CHECK(complex_to_json(back) == j);
    CHECK(mesh_size(back) == mesh_size(c));
  }
}

TEST_CASE("complex json tolerates tet order and orientation") {
  json j = {{"vertices", {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}},
            {"tets", {{1, 2, 3, 4}, {0, 2, 1, 3}}}};
  const Complex3 c = complex_from_json(j);
  CHECK(c.tets().size() == 2);
  CHECK(c.ambient().kind == AmbientKind::EuclideanRegion);
  CHECK(complex_to_json(c)["tets"][0][0] == 0);
}

TEST_CASE("malformed complex documents") {
  CHECK_THROWS_AS(complex_from_json(json::array()), Error);
  CHECK_THROWS_AS(complex_from_json(json{{"vertices", json::array()}}), Error);
  json bad_kind = {{"ambient", {{"kind", "hyperbolic"}}}, {"vertices", json::array()}, {"tets", json::array()}};
  CHECK_THROWS_AS(complex_from_json(bad_kind), Error);
  json improper = {{"vertices", {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.2, 0.2, 1}}},
                   {"tets", {{0, 1, 2, 3}, {0, 1, 2, 4}}}};
  try {
    complex_from_json(improper);
    FAIL("expected ImproperIntersection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ImproperIntersection);
  }
  try {
    read_json_file("/nonexistent/file.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
}

TEST_CASE("edge table from json") {
  const Complex3 c = regular_tet();
  const Vec3 a = c.vertices()[0], b = c.vertices()[1];
  const Vec3 bump = midpoint(a, b) + Vec3{0, 0, 0.05};
  json j = {{"edges", {{{"a", 1}, {"b", 0}, {"polyline", {{b.x, b.y, b.z}, {bump.x, bump.y, bump.z}, {a.x, a.y, a.z}}}}}}};
  const CurvedEdgeTable t = edge_table_from_json(j, c);
  const int e = c.find_edge(0, 1);
  REQUIRE(t[e].polyline.size() == 3);
  CHECK(t[e].polyline.front() == a);
  CHECK(t[e].sagitta() == doctest::Approx(0.05));
  CHECK_THROWS_AS(edge_table_from_json(json{{"edges", {{{"a", 0}, {"b", 9}, {"polyline", json::array()}}}}}, c), Error);
}

TEST_CASE("report header and rows") {
  const json h = report_header("quality", 7, {{"shape", 1e-6}});
  CHECK(h["tool_version"] == kToolVersion);
  CHECK(h["seed"] == 7);
  CHECK(h["tolerances"]["shape"] == 1e-6);
  LanternRow r;
  r.n = 8;
  r.area = 2.0;
  CHECK(to_json(r)["bound_n_over_8_ok"] == true);
}

TEST_CASE("pattern summary counts classes") {
  const Scene sc = quad_scene();
  const auto p = intersect(sc.surface, sc.complex);
  const json j = pattern_to_json(p, sc.complex);
  CHECK(j["quasi_normal"] == true);
  CHECK(j["counts"]["Elementary4"] == 1);
  CHECK(j["counts"]["Elementary3"] == 0);
  CHECK(j["components"].size() == 1);
  CHECK(j["cylinders"].empty());
  CHECK(j["violations"].empty());
}
