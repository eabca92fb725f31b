#include <cmath>
#include <set>

#include "doctest.h"
#include "qnk/fixtures.hpp"
#include "qnk/median.hpp"
#include "qnk/quality.hpp"

using namespace qnk;

namespace {

std::array<double, 3> angles(const Triangle3& t) {
  std::array<double, 3> a{angle_between(t[1] - t[0], t[2] - t[0]), angle_between(t[0] - t[1], t[2] - t[1]),
                          angle_between(t[0] - t[2], t[1] - t[2])};
  std::sort(a.begin(), a.end());
  return a;
}

double total_volume(const Complex3& c) {
  double v = 0.0;
  for (std::size_t t = 0; t < c.tets().size(); ++t) {
    auto p = c.tet_points(static_cast<int>(t));
    v += signed_volume(p[0], p[1], p[2], p[3]);
  }
  return v;
}

}  // namespace

TEST_CASE("med triangle") {
  Triangle3 eq{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0.5, std::sqrt(3.0) / 2, 0}};
  for (auto& t : med_triangle(eq)) {
    CHECK(distance(t[0], t[1]) == doctest::Approx(0.5));
    CHECK(distance(t[1], t[2]) == doctest::Approx(0.5));
    CHECK(distance(t[0], t[2]) == doctest::Approx(0.5));
  }
  Triangle3 right{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}};
  for (auto& t : med_triangle(right)) {
    std::array<double, 3> l{distance(t[0], t[1]), distance(t[1], t[2]), distance(t[0], t[2])};
    std::sort(l.begin(), l.end());
    CHECK(l[0] == doctest::Approx(0.5));
    CHECK(l[1] == doctest::Approx(0.5));
  }
  Triangle3 any{Vec3{0.1, 0.2, 0.3}, Vec3{1.7, 0.4, -0.2}, Vec3{0.5, 1.9, 0.8}};
  const auto pa = angles(any);
  for (auto& t : med_triangle(any)) {
    auto ca = angles(t);
    for (int i = 0; i < 3; ++i) CHECK(ca[i] == doctest::Approx(pa[i]).epsilon(1e-12));
  }
}

TEST_CASE("shape classification") {
  CHECK(classify_tet_shape(fixtures::regular_tet_points()).cls == ShapeClass::Regular);
  auto ar = classify_tet_shape(fixtures::almost_regular_tet_points(0.5));
  CHECK(ar.cls == ShapeClass::AlmostRegular);
  CHECK(ar.long_edge == 0);
  // five unit edges, one of 1.2: scale the long edge of the almost-regular shape
  std::array<Vec3, 4> g{Vec3{-0.6, 0, 0}, Vec3{0.6, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}};
  const double r = std::sqrt(1.0 - 0.36);  // distance of the other two from the axis
  g[2] = {0, r * std::cos(0.5 * std::acos(1 - 0.5 / (r * r))), r * std::sin(0.5 * std::acos(1 - 0.5 / (r * r)))};
  g[3] = {0, g[2].y, -g[2].z};
  CHECK(distance(g[2], g[3]) == doctest::Approx(1.0));
  CHECK(classify_tet_shape(g).cls == ShapeClass::General);
}

TEST_CASE("med tet of a regular tet") {
  auto p = fixtures::regular_tet_points();
  auto r = med_tet(p, classify_tet_shape(p));
  std::set<long long> lengths;
  int regular = 0, almost = 0;
  double vol = 0.0;
  for (int c = 0; c < 8; ++c) {
    auto& t = r.children[c];
    vol += signed_volume(t[0], t[1], t[2], t[3]);
    auto s = classify_tet_shape(t);
    regular += s.cls == ShapeClass::Regular;
    almost += s.cls == ShapeClass::AlmostRegular;
    CHECK((s.cls == ShapeClass::Regular) == (r.record.roles[c] == ChildRole::Peripheral));
    for (double l : s.edge_lengths) lengths.insert(std::llround(l * 1e9));
  }
  CHECK(regular == 4);
  CHECK(almost == 4);
  CHECK(lengths == std::set<long long>{std::llround(0.5e9), std::llround(std::sqrt(2.0) / 2 * 1e9)});
  CHECK(vol == doctest::Approx(signed_volume(p[0], p[1], p[2], p[3])).epsilon(1e-12));
}

TEST_CASE("med tet of an almost-regular tet") {
  for (double rho : {1.0, 0.37}) {
    auto p = fixtures::almost_regular_tet_points(2 * rho);
    auto r = med_tet(p, classify_tet_shape(p));
    const auto& d = r.record.diagonal_edges;
    CHECK((d[0] == 0 || d[1] == 0));  // dual to the long edge v0v1
    const Vec3 e = midpoint(p[0], p[1]), f = midpoint(p[2], p[3]);
    CHECK(distance(e, f) == doctest::Approx(rho).epsilon(1e-12));
    double vol = 0.0;
    for (auto& t : r.children) {
      vol += signed_volume(t[0], t[1], t[2], t[3]);
      auto s = classify_tet_shape(t);
      CHECK(s.cls != ShapeClass::General);
    }
    CHECK(vol == doctest::Approx(signed_volume(p[0], p[1], p[2], p[3])).epsilon(1e-12));
  }
}

TEST_CASE("med subdivide complex") {
  auto c = fixtures::regular_tet();
  auto m = med_subdivide(c);
  CHECK(m.complex.tets().size() == 8);
  // internal children carry the half-diagonal of a square of side 1/2
  CHECK(mesh_size(m.complex) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(m.records.size() == 1);
  int periph = 0;
  for (auto role : m.records[0].roles) periph += role == ChildRole::Peripheral;
  CHECK(periph == 4);

  auto g = med_subdivide(fixtures::two_glued_tets()).complex;
  CHECK(g.tets().size() == 16);
  // faces interior to the old shared face: four sub-faces, each shared by two tets
  const Vec3 a = g.vertices()[0], b = g.vertices()[1], cc = g.vertices()[2];
  const Vec3 n = normalized(cross(b - a, cc - a));
  int on_plane = 0;
  for (std::size_t f = 0; f < g.faces().size(); ++f) {
    bool flat = true;
    for (int i = 0; i < 3; ++i) flat &= std::abs(dot(g.face_point(static_cast<int>(f), i) - a, n)) < 1e-12;
    if (!flat) continue;
    ++on_plane;
    CHECK(g.face_tets(static_cast<int>(f))[1] >= 0);
  }
  CHECK(on_plane == 4);
}

TEST_CASE("med iterate") {
  auto lv = med_iterate(fixtures::regular_tet(), 3);
  CHECK(lv.size() == 3);
  std::size_t expect = 8;
  for (auto& l : lv) {
    CHECK(l.summary.tets == expect);
    expect *= 8;
    CHECK(l.summary.lambda_halved == (l.summary.level > 1));
    CHECK(l.summary.edge_ratios_ok);
    CHECK(total_volume(l.complex) == doctest::Approx(total_volume(fixtures::regular_tet())).epsilon(1e-10));
  }
  CHECK(lv[2].summary.lambda == doctest::Approx(std::sqrt(0.5) / 4).epsilon(1e-14));
  CHECK(lv[0].summary.min_fatness == doctest::Approx(lv[2].summary.min_fatness).epsilon(1e-10));

  auto cube = med_iterate(fixtures::kuhn_grid(1), 2);
  CHECK(cube[1].summary.lambda == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-14));
  CHECK(cube[1].complex.tets().size() == 6 * 64);
  CHECK(cube[0].summary.lambda_halved);
  CHECK(cube[1].summary.lambda_halved);

  for (auto& l : med_iterate(fixtures::single_tet(fixtures::almost_regular_tet_points()), 3))
    for (std::size_t t = 0; t < l.complex.tets().size(); ++t)
      CHECK(classify_tet_shape(l.complex.tet_points(static_cast<int>(t))).cls != ShapeClass::General);
}

TEST_CASE("barycentric subdivision loses fatness") {
  auto c = fixtures::regular_tet();
  auto b = fixtures::barycentric_subdivide(c);
  CHECK(b.tets().size() == 24);
  CHECK(complex_fatness(b) < complex_fatness(c));
}
