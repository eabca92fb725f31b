#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnk/convergence.hpp"
#include "qnk/error.hpp"
#include "qnk/fixtures.hpp"

using namespace qnk;
using namespace qnk::fixtures;

namespace {

double lantern_oracle(int n, long long m, double h) {
  const double a = std::numbers::pi / n;
  return 2.0 * n * std::sin(a) * std::sqrt(h * h + double(m) * double(m) * (1 - std::cos(a)) * (1 - std::cos(a)));
}

}  // namespace

TEST_CASE("hausdorff of a mesh with itself is zero") {
  const SurfaceMesh s = planar_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 3, 3);
  const auto h = hausdorff(s, s, 16);
  CHECK(h.value == 0.0);
  CHECK(h.lattice == 5);
  CHECK(h.samples_a == 18 * 21);
}

TEST_CASE("hausdorff of parallel squares is the sum of both directed distances") {
  const double d = 0.37;
  const SurfaceMesh a = planar_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 2, 2);
  const SurfaceMesh b = planar_patch({0, 0, d}, {1, 0, 0}, {0, 1, 0}, 3, 3);
  const auto h = hausdorff(a, b, 10);
  // the lattices of both meshes include the square corners so the
  // nearest sample is directly above or below at the corners; the
  // interior gap is bounded by the slack
  CHECK(h.forward >= d - 1e-12);
  CHECK(h.backward >= d - 1e-12);
  CHECK(h.value <= 2 * d + h.slack);
  CHECK(hausdorff(b, a, 10).value == doctest::Approx(h.value));
}

TEST_CASE("hausdorff on the torus wraps") {
  const SurfaceMesh a = torus_plane(4, 0.3);
  const SurfaceMesh b = torus_plane(4, 0.95);
  // across the period the planes are 0.35 apart, not 0.65
  const auto h = hausdorff(a, b, 6);
  CHECK(h.forward == doctest::Approx(0.35));
  CHECK(h.backward == doctest::Approx(0.35));
}

TEST_CASE("hausdorff rejects empty meshes") {
  SurfaceMesh e;
  const SurfaceMesh s = planar_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1, 1);
  CHECK_THROWS_AS(hausdorff(e, s), Error);
}

TEST_CASE("normal deviation of a tilted plane") {
  const double t = 0.1;
  const SurfaceMesh ref = planar_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 4, 4);
  const SurfaceMesh tilt = planar_patch({0, 0, 0}, {std::cos(t), 0, std::sin(t)}, {0, 1, 0}, 4, 4);
  const auto nd = normal_angle_deviation(ref, tilt, 4);
  CHECK(nd.max_angle == doctest::Approx(t).epsilon(1e-9));
  CHECK(nd.samples == 32 * 4);
  CHECK(nd.folded == 0);

  // reversed orientation folds
  SurfaceMesh flipped = tilt;
  for (auto& tri : flipped.triangles) std::swap(tri[1], tri[2]);
  const auto nf = normal_angle_deviation(ref, flipped, 4);
  CHECK(nf.max_angle == doctest::Approx(t).epsilon(1e-9));
  CHECK(nf.folded == nf.samples);

  const auto na = normal_angle_deviation(ref, tilt, 4, [](const Vec3&) { return Vec3{0, 0, 1}; });
  CHECK(na.max_angle == doctest::Approx(t).epsilon(1e-9));
}

TEST_CASE("lantern mesh") {
  LanternSpec spec;
  spec.n_around = 4;
  spec.n_rows = 2;
  const SurfaceMesh s = build_lantern(spec);
  CHECK(s.triangles.size() == 16);
  CHECK(s.vertices.size() == 12);
  for (auto& v : s.vertices) CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(surface_area(s) == doctest::Approx(lantern_oracle(4, 2, 1.0)).epsilon(1e-12));
  CHECK(lantern_area(spec) == doctest::Approx(lantern_oracle(4, 2, 1.0)).epsilon(1e-12));
  const auto topo = surface_topology(s);
  CHECK(topo.euler_characteristic == 0);

  CHECK(build_lantern(LanternSpec::make(LanternMode::Skinny, 8)).triangles.size() == 8192);
  CHECK(LanternSpec::make(LanternMode::Fat, 8).n_rows == 8);
  spec.n_around = 2;
  CHECK_THROWS_AS(build_lantern(spec), Error);
}

TEST_CASE("lantern report") {
  const auto skinny = lantern_report(LanternMode::Skinny, {8, 16});
  REQUIRE(skinny.size() == 2);
  CHECK(skinny[0].area == doctest::Approx(lantern_oracle(8, 512, 1.0)).epsilon(1e-10));
  CHECK(skinny[1].area == doctest::Approx(lantern_oracle(16, 4096, 1.0)).epsilon(1e-10));
  CHECK(skinny[0].bound_ok);
  CHECK(skinny[1].area > 2 * skinny[0].area);

  const auto fat = lantern_report(LanternMode::Fat, {128});
  CHECK(fat[0].area == doctest::Approx(lantern_oracle(128, 128, 1.0)).epsilon(1e-10));
  CHECK(fat[0].rel_error < 1e-3);
  CHECK(fat[0].bound_ok);
}

TEST_CASE("angle bound on a flat surface") {
  const Scene sc = lune_scene();
  const auto p = intersect(sc.surface, sc.complex);
  ManifoldBounds flat;
  const auto r = angle_bound_check(p, flat);
  CHECK(r.bound == doctest::Approx(1e-6));
  CHECK_FALSE(r.relaxed);
  CHECK(r.rows.size() == 2);
  // the dome is curved, so C = 0 is violated
  CHECK_FALSE(r.ok);

  ManifoldBounds coarse;
  coarse.curvature_budget_C = 10.0;
  const auto rc = angle_bound_check(p, coarse);
  CHECK(rc.relaxed);
  CHECK(rc.ok);
}

TEST_CASE("sweep of the plane in the torus") {
  const SurfaceMesh s = torus_plane(16);
  SweepOptions opt;
  opt.levels = 2;
  opt.samples = 6;
  const auto r = convergence_sweep(s, kuhn_grid(2, 1.0, true), opt);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.first_quasi_normal == 1);
  CHECK(r.rows[1].lambda == doctest::Approx(r.rows[0].lambda / 2).epsilon(1e-12));
  CHECK(r.rows[1].tets == 8 * r.rows[0].tets);
  for (auto& row : r.rows) {
    CHECK(row.quasi_normal);
    CHECK(row.area_fa == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.area_pl == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.max_normal_angle < 1e-9);
    CHECK(row.bound_2lambda_ok);
  }
  CHECK(r.bounds_ok);
  CHECK(r.area_monotone);
}

TEST_CASE("hausdorff triangle inequality and symmetry") {
  const SurfaceMesh a = planar_patch({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 3, 3);
  const SurfaceMesh b = planar_patch({0.1, 0, 0.2}, {1, 0, 0.1}, {0, 1, 0}, 4, 2);
  const SurfaceMesh c = tilted_sphere({0.5, 0.5, 0.6}, 0.3, 2);
  const auto ab = hausdorff(a, b), bc = hausdorff(b, c), ac = hausdorff(a, c);
  CHECK(ac.value <= ab.value + bc.value + ab.slack + bc.slack);
  CHECK(hausdorff(b, a).value == doctest::Approx(ab.value).epsilon(1e-12));
  CHECK(hausdorff(c, a).value == doctest::Approx(ac.value).epsilon(1e-12));
}

TEST_CASE("skinny lantern area per n increases") {
  const auto rows = lantern_report(LanternMode::Skinny, {8, 16, 32, 64});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].area / rows[i].n >= 1.0 / 8);
    if (i > 0) CHECK(rows[i].area / rows[i].n > rows[i - 1].area / rows[i - 1].n);
  }
  const auto fat = lantern_report(LanternMode::Fat, {8, 64});
  CHECK(fat[1].rel_error < fat[0].rel_error);
}
