#include <cmath>

#include "doctest.h"
#include "qnk/error.hpp"
#include "qnk/fixtures.hpp"
#include "qnk/median.hpp"
#include "qnk/quality.hpp"

using namespace qnk;

namespace {

// Cayley-Menger oracle for the circumradius of a tet from its six edge lengths.
double cm_circumradius(const std::array<Vec3, 4>& p) {
  const double a = distance(p[0], p[1]), b = distance(p[0], p[2]), c = distance(p[0], p[3]);
  const double A = distance(p[2], p[3]), B = distance(p[1], p[3]), C = distance(p[1], p[2]);
  const double aA = a * A, bB = b * B, cC = c * C;
  const double s = (aA + bB + cC) * (aA + bB - cC) * (aA - bB + cC) * (-aA + bB + cC);
  const double V = std::abs(signed_volume(p[0], p[1], p[2], p[3]));
  return std::sqrt(s) / (24.0 * V);
}

// Heron areas over 3V for the inradius.
double heron_inradius(const std::array<Vec3, 4>& p) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec3 &a = p[(i + 1) % 4], &b = p[(i + 2) % 4], &c = p[(i + 3) % 4];
    const double x = distance(a, b), y = distance(b, c), z = distance(a, c), s = (x + y + z) / 2;
    total += std::sqrt(s * (s - x) * (s - y) * (s - z));
  }
  return 3.0 * std::abs(signed_volume(p[0], p[1], p[2], p[3])) / total;
}

}  // namespace

TEST_CASE("regular tet fatness") {
  const double a = 1.0;
  auto q = tet_quality(fixtures::regular_tet_points(a));
  const double r = a / (2 * std::sqrt(6.0)), R = a * std::sqrt(6.0) / 4;
  CHECK(q.insphere_r == doctest::Approx(r).epsilon(1e-12));
  CHECK(q.circumsphere_R == doctest::Approx(R).epsilon(1e-12));
  CHECK(q.fatness_phi == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(q.min_dihedral() == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-12));
  CHECK(q.diameter == doctest::Approx(1.0));
}

TEST_CASE("equilateral triangle fatness") {
  auto q = simplex_quality({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}});
  CHECK(q.insphere_r == doctest::Approx(1 / (2 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(q.circumsphere_R == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(q.fatness_phi == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("needle tet") {
  auto p = fixtures::needle_tet_points();
  auto q = tet_quality(p);
  CHECK(q.fatness_phi < 1e-5);
  CHECK(q.circumsphere_R == doctest::Approx(cm_circumradius(p)).epsilon(1e-6));
  CHECK(q.insphere_r == doctest::Approx(heron_inradius(p)).epsilon(1e-8));
  auto fc = check_fatness_conditions(q, 10.0);
  CHECK_FALSE(fc.angle_condition_holds);
  auto loose = check_fatness_conditions(q, 1e12);
  CHECK(loose.angle_condition_holds);
  CHECK(loose.area_condition_holds);
}

TEST_CASE("fatness conditions on regular tet") {
  auto fc = check_fatness_conditions(tet_quality(fixtures::regular_tet_points()), 10.0);
  CHECK(fc.angle_condition_holds);
  CHECK(fc.area_condition_holds);
  CHECK(fc.min_dihedral == doctest::Approx(1.2309594173).epsilon(1e-9));
}

TEST_CASE("radii match independent oracles and spheres are tight") {
  std::array<Vec3, 4> p{Vec3{0.1, -0.3, 0.2}, Vec3{1.3, 0.1, -0.1}, Vec3{0.4, 1.1, 0.3}, Vec3{0.2, 0.5, 1.7}};
  auto q = tet_quality(p);
  CHECK(q.circumsphere_R == doctest::Approx(cm_circumradius(p)).epsilon(1e-10));
  CHECK(q.insphere_r == doctest::Approx(heron_inradius(p)).epsilon(1e-10));
  for (auto& v : p) CHECK(distance(v, q.circumcenter) == doctest::Approx(q.circumsphere_R).epsilon(1e-9));
  for (int i = 0; i < 4; ++i) {
    const Vec3 &a = p[(i + 1) % 4], &b = p[(i + 2) % 4], &c = p[(i + 3) % 4];
    const Vec3 n = normalized(cross(b - a, c - a));
    CHECK(std::abs(dot(q.incenter - a, n)) == doctest::Approx(q.insphere_r).epsilon(1e-9));
  }
  for (double d : q.dihedral_angles) {
    CHECK(d > 0);
    CHECK(d < M_PI);
  }
}

TEST_CASE("fatness is invariant under rigid motion and scaling") {
  std::array<Vec3, 4> p{Vec3{0.1, -0.3, 0.2}, Vec3{1.3, 0.1, -0.1}, Vec3{0.4, 1.1, 0.3}, Vec3{0.2, 0.5, 1.7}};
  const double phi = tet_quality(p).fatness_phi;
  const double c = std::cos(0.7), s = std::sin(0.7);
  std::array<Vec3, 4> m;
  for (int i = 0; i < 4; ++i) m[i] = Vec3{c * p[i].x - s * p[i].y, s * p[i].x + c * p[i].y, p[i].z} * 3.7 + Vec3{5, -2, 1};
  CHECK(tet_quality(m).fatness_phi == doctest::Approx(phi).epsilon(1e-10));
}

TEST_CASE("degenerate simplex") {
  CHECK_THROWS_AS(simplex_quality({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}), Error);
  CHECK_THROWS_AS(tet_quality({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 1, 0}}), Error);
}

TEST_CASE("complex fatness") {
  auto c = fixtures::two_glued_tets();
  CHECK(complex_fatness(c) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  auto n = fixtures::needle_tet_points();
  auto r = fixtures::regular_tet_points();
  Vec3 apex = r[3];
  apex.z = -apex.z;
  auto mixed = build_complex({n[0], n[1], n[2], n[3], apex}, {{0, 1, 2, 3}, {0, 1, 2, 4}});
  CHECK(complex_fatness(mixed) == tet_quality(n).fatness_phi);
  // after one Med step of a regular tet: min over regular (1/3) and almost-regular children
  auto med = med_subdivide(fixtures::regular_tet()).complex;
  const double ar = tet_quality(fixtures::almost_regular_tet_points(0.5)).fatness_phi;
  CHECK(complex_fatness(med) == doctest::Approx(std::min(1.0 / 3.0, ar)).epsilon(1e-12));
  for (auto& q : complex_quality(med)) CHECK(complex_fatness(med) <= q.fatness_phi);
}
