#include "qnk/quality.hpp"

#include <algorithm>
#include <limits>

#include "qnk/error.hpp"
#include "qnk/parallel.hpp"

namespace qnk {

double SimplexQuality::min_dihedral() const {
  return dihedral_angles.empty() ? 0.0 : *std::min_element(dihedral_angles.begin(), dihedral_angles.end());
}

namespace {

SimplexQuality triangle_quality(const Vec3& a, const Vec3& b, const Vec3& c) {
  SimplexQuality q;
  q.dim = 2;
  const double la = distance(b, c), lb = distance(a, c), lc = distance(a, b);
  q.diameter = std::max({la, lb, lc});
  q.volume = triangle_area(a, b, c);
  if (!(q.volume > 1e-12 * q.diameter * q.diameter))
    throw Error(ErrorKind::DegenerateSimplex, "triangle area below tolerance");
  const double s = 0.5 * (la + lb + lc);
  q.insphere_r = q.volume / s;
  q.circumsphere_R = la * lb * lc / (4.0 * q.volume);
  q.fatness_phi = q.insphere_r / q.circumsphere_R;
  q.incenter = (a * la + b * lb + c * lc) / (la + lb + lc);
  const Vec3 ab = b - a, ac = c - a, n = cross(ab, ac);
  q.circumcenter = a + (cross(n, ab) * dot(ac, ac) + cross(ac, n) * dot(ab, ab)) / (2.0 * dot(n, n));
  q.dihedral_angles = {angle_between(b - a, c - a), angle_between(a - b, c - b), angle_between(a - c, b - c)};
  q.face_ratio_min = std::min(1.0, q.volume / (q.diameter * q.diameter));
  q.face_ratio_max = 1.0;
  return q;
}

}  // namespace

SimplexQuality tet_quality(const std::array<Vec3, 4>& p) {
  static constexpr int kEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  SimplexQuality q;
  q.dim = 3;
  for (auto& e : kEdges) q.diameter = std::max(q.diameter, distance(p[e[0]], p[e[1]]));
  q.volume = std::abs(signed_volume(p[0], p[1], p[2], p[3]));
  const double d3 = q.diameter * q.diameter * q.diameter;
  if (!(q.volume > 1e-12 * d3)) throw Error(ErrorKind::DegenerateSimplex, "tet volume below tolerance");

  double area_sum = 0.0;
  double area[4];
  q.face_ratio_min = std::numeric_limits<double>::infinity();
  q.face_ratio_max = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec3& a = p[(i + 1) % 4];
    const Vec3& b = p[(i + 2) % 4];
    const Vec3& c = p[(i + 3) % 4];
    area[i] = triangle_area(a, b, c);
    area_sum += area[i];
    const double fd = std::max({distance(a, b), distance(b, c), distance(a, c)});
    const double ratio = area[i] / (fd * fd);
    q.face_ratio_min = std::min(q.face_ratio_min, ratio);
    q.face_ratio_max = std::max(q.face_ratio_max, ratio);
  }
  // Edges contribute the ratio 1 exactly.
  q.face_ratio_min = std::min({q.face_ratio_min, 1.0, q.volume / d3});
  q.face_ratio_max = std::max({q.face_ratio_max, 1.0, q.volume / d3});

  q.insphere_r = 3.0 * q.volume / area_sum;
  q.incenter = (p[0] * area[0] + p[1] * area[1] + p[2] * area[2] + p[3] * area[3]) / area_sum;

  const Vec3 d1 = p[1] - p[0], d2 = p[2] - p[0], d3v = p[3] - p[0];
  const double den = 2.0 * dot(d1, cross(d2, d3v));
  const Vec3 off = (cross(d2, d3v) * dot(d1, d1) + cross(d3v, d1) * dot(d2, d2) + cross(d1, d2) * dot(d3v, d3v)) / den;
  q.circumcenter = p[0] + off;
  q.circumsphere_R = norm(off);
  q.fatness_phi = q.insphere_r / q.circumsphere_R;

  q.dihedral_angles.resize(6);
  for (int k = 0; k < 6; ++k) {
    const int i = kEdges[k][0], j = kEdges[k][1];
    int o[2], m = 0;
    for (int l = 0; l < 4; ++l)
      if (l != i && l != j) o[m++] = l;
    const Vec3 e = normalized(p[j] - p[i]);
    Vec3 u = p[o[0]] - p[i], w = p[o[1]] - p[i];
    u -= e * dot(u, e);
    w -= e * dot(w, e);
    q.dihedral_angles[k] = angle_between(u, w);
  }
  return q;
}

SimplexQuality simplex_quality(const std::vector<Vec3>& pts) {
  if (pts.size() == 3) return triangle_quality(pts[0], pts[1], pts[2]);
  if (pts.size() == 4) return tet_quality({pts[0], pts[1], pts[2], pts[3]});
  throw Error(ErrorKind::InvalidInput, "simplex_quality expects 3 or 4 points");
}

FatnessConditions check_fatness_conditions(const SimplexQuality& q, double c_k) {
  FatnessConditions r;
  r.phi = q.fatness_phi;
  r.min_dihedral = q.min_dihedral();
  r.face_ratio_min = q.face_ratio_min;
  r.face_ratio_max = q.face_ratio_max;
  const double lo = q.fatness_phi / c_k, hi = c_k * q.fatness_phi;
  r.angle_condition_holds = lo <= r.min_dihedral && r.min_dihedral <= hi;
  r.area_condition_holds = lo <= q.face_ratio_min && q.face_ratio_max <= hi;
  return r;
}

std::vector<SimplexQuality> complex_quality(const Complex3& c) {
  std::vector<SimplexQuality> out(c.tets().size());
  parallel_for(out.size(), [&](std::size_t t) { out[t] = tet_quality(c.tet_points(static_cast<int>(t))); });
  return out;
}

double complex_fatness(const Complex3& c) {
  std::vector<double> phi(c.tets().size());
  parallel_for(phi.size(), [&](std::size_t t) {
    phi[t] = tet_quality(c.tet_points(static_cast<int>(t))).fatness_phi;
  });
  return *std::min_element(phi.begin(), phi.end());
}

}  // namespace qnk
