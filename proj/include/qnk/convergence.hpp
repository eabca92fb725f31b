#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qnk/complex.hpp"
#include "qnk/flat_associate.hpp"
#include "qnk/intersection.hpp"
#include "qnk/surface.hpp"

namespace qnk {

/// Sum of directed maxima between two sampled point sets (each triangle sampled
/// on a barycentric lattice, vertices included). Periodic on the torus.
struct HausdorffResult {
  double value = 0.0;     ///< forward + backward
  double forward = 0.0;   ///< max over samples of A of the distance to the samples of B
  double backward = 0.0;
  std::size_t samples_a = 0, samples_b = 0;
  int lattice = 0;        ///< subdivisions per triangle edge
  double slack = 0.0;     ///< covering radius of both sample sets
};

/// Throws EmptyMesh.
HausdorffResult hausdorff(const SurfaceMesh& a, const SurfaceMesh& b, int samples_per_triangle = 16);

using NormalField = std::function<Vec3(const Vec3&)>;

struct NormalDeviation {
  double max_angle = 0.0;
  std::size_t samples = 0;
  std::size_t folded = 0;  ///< samples whose normals pointed against each other
};

/// For samples x on `approx`, the angle between its normal and the normal of
/// `ref` at the nearest sample of ref (or `analytic` at that point).
NormalDeviation normal_angle_deviation(const SurfaceMesh& ref, const SurfaceMesh& approx, int samples = 4,
                                       const NormalField& analytic = {});

struct BentAngle {
  int arc = -1;
  double theta_p = 0.0, theta_q = 0.0;
  double bound = 0.0;
  bool ok = true;
};

struct AngleBoundReport {
  std::vector<BentAngle> rows;
  double lambda = 0.0;
  double bound = 0.0;
  bool relaxed = false;  ///< C * lambda too coarse for the bound; rows are reported only
  bool ok = true;
};

/// Tangent-vs-edge angles at both ends of every bent curve against
/// factor * C * lambda (noise floor 1e-6 for C = 0).
AngleBoundReport angle_bound_check(const IntersectionPattern& p, const ManifoldBounds& bounds, double factor = 1.5,
                                   double coarse_limit = 0.1);

struct ConvergenceRow {
  int level = 0;
  std::size_t tets = 0;
  double lambda = 0.0;
  double min_fatness = 0.0;
  bool quasi_normal = false;
  int perturbation_attempts = 0;
  double hausdorff = 0.0;
  double hausdorff_slack = 0.0;
  double area_fa = 0.0;
  double multiple_area_fa = 0.0;
  double area_pl = 0.0;
  double area_ref = 0.0;
  double max_normal_angle = 0.0;
  std::size_t folded_normals = 0;
  bool bound_2lambda_ok = false;
  int bent_curves = 0;
  std::vector<std::string> violations;
};

struct SweepOptions {
  int levels = 4;
  bool include_base = false;  ///< also report the input complex as level 0
  int samples = 16;
  int normal_samples = 4;
  std::uint64_t seed = 0;
  std::optional<double> area_ref;  ///< defaults to the area of the input mesh
  NormalField analytic_normal;
  int tameness_samples = 64;
};

struct SweepResult {
  std::vector<ConvergenceRow> rows;
  int first_quasi_normal = -1;
  bool bounds_ok = true;        ///< d_H <= 2 lambda + slack at every quasi-normal level
  bool area_monotone = true;    ///< |area_fa - area_ref| non-increasing over the last half of levels
};

SweepResult convergence_sweep(const SurfaceMesh& s, const Complex3& c0, const SweepOptions& opt = {});

enum class LanternMode { Skinny, Fat };

struct LanternSpec {
  int n_around = 8;
  int n_rows = 1;
  double radius = 1.0;
  double height = 1.0;
  static LanternSpec make(LanternMode mode, int n);
};

/// Rows offset by half a step alternately, 2 * n_around * n_rows triangles. Throws InvalidInput.
SurfaceMesh build_lantern(const LanternSpec& spec);
/// Area without storing the mesh.
double lantern_area(const LanternSpec& spec);

struct LanternRow {
  LanternMode mode = LanternMode::Skinny;
  int n = 0;
  long long rows = 0;
  double area = 0.0;
  double rel_error = 0.0;  ///< |area - 2 pi r h| / 2 pi r h
  bool bound_ok = true;    ///< skinny: area >= n/8; fat: rel_error <= 0.01
};

std::vector<LanternRow> lantern_report(LanternMode mode, const std::vector<int>& ns);

}  // namespace qnk
