#include "qnk/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "qnk/error.hpp"
#include "qnk/linearization.hpp"
#include "qnk/median.hpp"
#include "qnk/parallel.hpp"
#include "qnk/quality.hpp"

namespace qnk {

namespace {

Vec3 reduce(Vec3 p, const AmbientModel& amb) {
  if (amb.is_torus())
    for (int k = 0; k < 3; ++k) p[k] -= std::floor(p[k] / amb.period[k]) * amb.period[k];
  return p;
}

// Sparse bucket grid for nearest-point queries, periodic on the torus. Only
// occupied cells are stored, so surfaces in a large box stay cheap.
class PointIndex {
 public:
  PointIndex(const std::vector<Vec3>& pts, const AmbientModel& amb, double cell) : amb_(amb) {
    cell = std::max(cell, 1e-9);
    if (amb.is_torus()) {
      for (int k = 0; k < 3; ++k) {
        dims_[k] = std::clamp(static_cast<int>(amb.period[k] / cell), 1, 1 << 20);
        h_[k] = amb.period[k] / dims_[k];
      }
    } else {
      Box3 b;
      for (auto& p : pts) b.expand(p);
      lo_ = b.lo;
      for (int k = 0; k < 3; ++k) {
        dims_[k] = std::clamp(static_cast<int>((b.hi[k] - b.lo[k]) / cell) + 1, 1, 1 << 20);
        h_[k] = cell;
      }
    }
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) keyed[i] = {key(coords(reduce(pts[i], amb))), i};
    std::sort(keyed.begin(), keyed.end());
    pts_.reserve(pts.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (i == 0 || keyed[i].first != keyed[i - 1].first) cells_[keyed[i].first] = {i, i};
      cells_[keyed[i].first].second = i + 1;
      pts_.push_back({reduce(pts[keyed[i].second], amb), keyed[i].second});
    }
  }

  /// (distance, original index) of the nearest point.
  std::pair<double, std::size_t> nearest(const Vec3& q0) const {
    const Vec3 q = reduce(q0, amb_);
    const auto c = coords(q);
    const double hmin = std::min({h_[0], h_[1], h_[2]});
    int rmax = std::max({dims_[0], dims_[1], dims_[2]});
    if (!amb_.is_torus())
      for (int k = 0; k < 3; ++k) rmax = std::max(rmax, std::abs(c[k]) + dims_[k]);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (int r = 0; r <= rmax; ++r) {
      for (int dz = -r; dz <= r; ++dz)
        for (int dy = -r; dy <= r; ++dy) {
          const bool face = std::abs(dz) == r || std::abs(dy) == r;
          for (int dx = -r; dx <= r; dx += face ? 1 : 2 * std::max(r, 1)) {
            std::array<int, 3> cc{c[0] + dx, c[1] + dy, c[2] + dz};
            if (amb_.is_torus())
              for (int k = 0; k < 3; ++k) cc[k] = ((cc[k] % dims_[k]) + dims_[k]) % dims_[k];
            const auto it = cells_.find(key(cc));
            if (it == cells_.end()) continue;
            for (std::size_t i = it->second.first; i < it->second.second; ++i) {
              const double d = dist(q, pts_[i].first);
              if (d < best) {
                best = d;
                best_i = pts_[i].second;
              }
            }
          }
        }
      if (best <= r * hmin) break;
    }
    return {best, best_i};
  }

 private:
  double dist(const Vec3& a, const Vec3& b) const {
    Vec3 d = b - a;
    if (amb_.is_torus())
      for (int k = 0; k < 3; ++k) d[k] -= amb_.period[k] * std::round(d[k] / amb_.period[k]);
    return norm(d);
  }
  std::array<int, 3> coords(const Vec3& p) const {
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) {
      c[k] = static_cast<int>(std::floor((p[k] - lo_[k]) / h_[k]));
      if (amb_.is_torus()) c[k] = std::clamp(c[k], 0, dims_[k] - 1);
    }
    return c;
  }
  static std::uint64_t key(const std::array<int, 3>& c) {
    auto part = [](int v) { return static_cast<std::uint64_t>(v + (1 << 20)) & 0x1FFFFF; };
    return part(c[0]) | (part(c[1]) << 21) | (part(c[2]) << 42);
  }

  AmbientModel amb_;
  Vec3 lo_{0, 0, 0}, h_;
  std::array<int, 3> dims_{};
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> cells_;
  std::vector<std::pair<Vec3, std::size_t>> pts_;
};

int lattice_for(int samples) {
  int m = 1;
  while ((m + 1) * (m + 2) / 2 < samples) ++m;
  return m;
}

struct Samples {
  std::vector<Vec3> pts;
  std::vector<int> tri;
  double max_diam = 0.0;
};

Samples sample_mesh(const SurfaceMesh& s, int m) {
  Samples out;
  for (std::size_t t = 0; t < s.triangles.size(); ++t) {
    const auto p = s.triangle_points(static_cast<int>(t));
    out.max_diam = std::max({out.max_diam, distance(p[0], p[1]), distance(p[1], p[2]), distance(p[0], p[2])});
    for (int i = 0; i <= m; ++i)
      for (int j = 0; i + j <= m; ++j) {
        const double a = static_cast<double>(i) / m, b = static_cast<double>(j) / m;
        out.pts.push_back(p[0] * (1 - a - b) + p[1] * a + p[2] * b);
        out.tri.push_back(static_cast<int>(t));
      }
  }
  return out;
}

double directed_max(const std::vector<Vec3>& from, const PointIndex& to) {
  std::mutex mu;
  double result = 0.0;
  const std::size_t chunk = 4096;
  parallel_for((from.size() + chunk - 1) / chunk, [&](std::size_t c) {
    double local = 0.0;
    const std::size_t end = std::min(from.size(), (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) local = std::max(local, to.nearest(from[i]).first);
    std::lock_guard<std::mutex> lock(mu);
    result = std::max(result, local);
  });
  return result;
}

}  // namespace

HausdorffResult hausdorff(const SurfaceMesh& a, const SurfaceMesh& b, int samples_per_triangle) {
  if (a.triangles.empty() || b.triangles.empty()) throw Error(ErrorKind::EmptyMesh, "hausdorff needs two non-empty meshes");
  HausdorffResult r;
  r.lattice = lattice_for(samples_per_triangle);
  const Samples sa = sample_mesh(a, r.lattice), sb = sample_mesh(b, r.lattice);
  r.samples_a = sa.pts.size();
  r.samples_b = sb.pts.size();
  const AmbientModel amb = a.ambient.is_torus() ? a.ambient : b.ambient;
  const PointIndex ia(sa.pts, amb, sa.max_diam / r.lattice), ib(sb.pts, amb, sb.max_diam / r.lattice);
  r.forward = directed_max(sa.pts, ib);
  r.backward = directed_max(sb.pts, ia);
  r.value = r.forward + r.backward;
  r.slack = (sa.max_diam + sb.max_diam) / r.lattice;
  return r;
}

NormalDeviation normal_angle_deviation(const SurfaceMesh& ref, const SurfaceMesh& approx, int samples,
                                       const NormalField& analytic) {
  if (ref.triangles.empty() || approx.triangles.empty())
    throw Error(ErrorKind::EmptyMesh, "normal deviation needs two non-empty meshes");
  const Samples rs = sample_mesh(ref, lattice_for(16));
  std::vector<Vec3> ref_normals(ref.triangles.size());
  for (std::size_t t = 0; t < ref.triangles.size(); ++t) ref_normals[t] = ref.triangle_normal(static_cast<int>(t));
  const AmbientModel amb = ref.ambient.is_torus() ? ref.ambient : approx.ambient;
  const PointIndex index(rs.pts, amb, rs.max_diam / lattice_for(16));
  // centroid first, then points pulled toward each corner
  std::vector<std::array<double, 3>> bary = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {2.0 / 3, 1.0 / 6, 1.0 / 6},
                                             {1.0 / 6, 2.0 / 3, 1.0 / 6}, {1.0 / 6, 1.0 / 6, 2.0 / 3}};
  for (int k = 4; k < samples; ++k) {
    const double a = 0.1 + 0.8 * std::fmod(0.618034 * k, 1.0), b = (1 - a) * std::fmod(0.754878 * k, 1.0);
    bary.push_back({a, b, 1 - a - b});
  }
  bary.resize(std::max(1, samples));

  NormalDeviation out;
  std::mutex mu;
  parallel_for(approx.triangles.size(), [&](std::size_t t) {
    const auto p = approx.triangle_points(static_cast<int>(t));
    const Vec3 n = cross(p[1] - p[0], p[2] - p[0]);
    if (norm(n) == 0.0) return;
    double worst = 0.0;
    std::size_t folded = 0;
    for (auto& w : bary) {
      const Vec3 x = p[0] * w[0] + p[1] * w[1] + p[2] * w[2];
      const std::size_t i = index.nearest(x).second;
      const Vec3 nr = analytic ? analytic(rs.pts[i]) : ref_normals[rs.tri[i]];
      double ang = angle_between(n, nr);
      if (ang > std::numbers::pi / 2) {
        ang = std::numbers::pi - ang;
        ++folded;
      }
      worst = std::max(worst, ang);
    }
    std::lock_guard<std::mutex> lock(mu);
    out.max_angle = std::max(out.max_angle, worst);
    out.samples += bary.size();
    out.folded += folded;
  });
  return out;
}

AngleBoundReport angle_bound_check(const IntersectionPattern& p, const ManifoldBounds& bounds, double factor,
                                   double coarse_limit) {
  AngleBoundReport r;
  r.lambda = p.lambda;
  const double cl = bounds.curvature_budget_C * p.lambda;
  r.bound = std::max(factor * cl, 1e-6);
  r.relaxed = cl > coarse_limit;
  for (std::size_t a = 0; a < p.arcs.size(); ++a) {
    const Arc& arc = p.arcs[a];
    if (arc.cls != ArcClass::BentCurve || arc.polyline.size() < 3) continue;
    const auto& pl = arc.polyline;
    const Vec3 P = pl.front(), Q = pl.back();
    BentAngle row;
    row.arc = static_cast<int>(a);
    row.theta_p = angle_between(pl[1] - P, Q - P);
    row.theta_q = angle_between(pl[pl.size() - 2] - Q, P - Q);
    row.bound = r.bound;
    row.ok = row.theta_p <= r.bound && row.theta_q <= r.bound;
    if (!row.ok && !r.relaxed) r.ok = false;
    r.rows.push_back(row);
  }
  return r;
}

SweepResult convergence_sweep(const SurfaceMesh& s, const Complex3& c0, const SweepOptions& opt) {
  SweepResult out;
  const double area_ref = opt.area_ref ? *opt.area_ref : surface_area(s);
  std::vector<std::pair<int, Complex3>> levels;
  if (opt.include_base) levels.push_back({0, c0});
  for (auto& ml : med_iterate(c0, opt.levels, true)) levels.push_back({ml.summary.level, std::move(ml.complex)});

  IntersectOptions iopt;
  iopt.seed = opt.seed;
  for (auto& [level, c] : levels) {
    ConvergenceRow row;
    row.level = level;
    row.tets = c.tets().size();
    row.lambda = mesh_size(c);
    row.min_fatness = complex_fatness(c);
    row.area_ref = area_ref;
    const IntersectionPattern p = intersect(s, c, iopt);
    row.perturbation_attempts = p.perturbation_attempts;
    for (auto& a : p.arcs) row.bent_curves += a.cls == ArcClass::BentCurve;
    const auto qn = is_quasi_normal(p);
    const auto iqn = is_internally_quasi_normal(p, c);
    row.quasi_normal = qn.holds || iqn.holds;
    for (auto& w : (qn.holds ? iqn : qn).witnesses) row.violations.push_back(w.kind);
    if (row.quasi_normal) {
      if (out.first_quasi_normal < 0) out.first_quasi_normal = level;
      const FlatAssociateSurface fa = build_flat_associate(p, c, opt.tameness_samples);
      const SurfaceMesh mesh = fa.to_mesh();
      row.area_fa = surface_area(fa);
      row.multiple_area_fa = multiple_area(fa);
      row.area_pl = surface_area(build_pl_surface(p, c, opt.tameness_samples));
      if (!mesh.triangles.empty()) {
        const HausdorffResult h = hausdorff(s, mesh, opt.samples);
        row.hausdorff = h.value;
        row.hausdorff_slack = h.slack;
        const NormalDeviation nd = normal_angle_deviation(s, mesh, opt.normal_samples, opt.analytic_normal);
        row.max_normal_angle = nd.max_angle;
        row.folded_normals = nd.folded;
      }
      row.bound_2lambda_ok = row.hausdorff <= 2 * row.lambda + row.hausdorff_slack;
      out.bounds_ok &= row.bound_2lambda_ok;
    }
    out.rows.push_back(std::move(row));
  }
  // area gap over the last half of the quasi-normal levels
  std::vector<double> gaps;
  for (auto& r : out.rows)
    if (r.quasi_normal) gaps.push_back(std::abs(r.multiple_area_fa - r.area_ref));
  const std::size_t from = gaps.size() / 2;
  for (std::size_t i = std::max<std::size_t>(from, 1); i < gaps.size(); ++i)
    if (gaps[i] > gaps[i - 1] + 1e-12 * area_ref) out.area_monotone = false;
  return out;
}

LanternSpec LanternSpec::make(LanternMode mode, int n) {
  LanternSpec s;
  s.n_around = n;
  s.n_rows = mode == LanternMode::Skinny ? n * n * n : n;
  return s;
}

namespace {

void check_spec(const LanternSpec& s) {
  if (s.n_around < 3) throw Error(ErrorKind::InvalidInput, "lantern needs n_around >= 3");
  if (s.n_rows < 1) throw Error(ErrorKind::InvalidInput, "lantern needs n_rows >= 1");
  if (!(s.radius > 0) || !(s.height > 0)) throw Error(ErrorKind::InvalidInput, "lantern radius and height must be positive");
}

Vec3 lantern_vertex(const LanternSpec& s, int row, int i) {
  const double a = (2.0 * i + (row % 2)) * std::numbers::pi / s.n_around;
  return {s.radius * std::cos(a), s.radius * std::sin(a), s.height * row / s.n_rows};
}

template <class F>
void for_each_lantern_triangle(const LanternSpec& s, F&& f) {
  const int n = s.n_around;
  for (int k = 0; k < s.n_rows; ++k) {
    // odd rows are rotated half a step forward
    const int hi_shift = (k + 1) % 2;
    for (int i = 0; i < n; ++i) {
      const std::array<int, 2> a{k, i}, b{k, (i + 1) % n};
      const std::array<int, 2> top = hi_shift ? std::array<int, 2>{k + 1, i} : std::array<int, 2>{k + 1, (i + 1) % n};
      const std::array<int, 2> top_prev = hi_shift ? std::array<int, 2>{k + 1, (i + n - 1) % n} : std::array<int, 2>{k + 1, i};
      f(a, b, top);
      f(a, top, top_prev);
    }
  }
}

}  // namespace

SurfaceMesh build_lantern(const LanternSpec& spec) {
  check_spec(spec);
  SurfaceMesh s;
  for (int k = 0; k <= spec.n_rows; ++k)
    for (int i = 0; i < spec.n_around; ++i) s.vertices.push_back(lantern_vertex(spec, k, i));
  auto id = [&](const std::array<int, 2>& v) { return v[0] * spec.n_around + v[1]; };
  for_each_lantern_triangle(spec, [&](auto a, auto b, auto c) { s.triangles.push_back({id(a), id(b), id(c)}); });
  return s;
}

double lantern_area(const LanternSpec& spec) {
  check_spec(spec);
  double sum = 0.0, comp = 0.0;  // compensated
  for_each_lantern_triangle(spec, [&](auto a, auto b, auto c) {
    const double t = triangle_area(lantern_vertex(spec, a[0], a[1]), lantern_vertex(spec, b[0], b[1]),
                                   lantern_vertex(spec, c[0], c[1]));
    const double y = t - comp, z = sum + y;
    comp = (z - sum) - y;
    sum = z;
  });
  return sum;
}

std::vector<LanternRow> lantern_report(LanternMode mode, const std::vector<int>& ns) {
  std::vector<LanternRow> rows(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const LanternSpec spec = LanternSpec::make(mode, ns[i]);
    LanternRow& r = rows[i];
    r.mode = mode;
    r.n = ns[i];
    r.rows = spec.n_rows;
    r.area = lantern_area(spec);
    const double exact = 2 * std::numbers::pi * spec.radius * spec.height;
    r.rel_error = std::abs(r.area - exact) / exact;
    r.bound_ok = mode == LanternMode::Skinny ? r.area >= ns[i] / 8.0 : r.rel_error <= 0.01;
  });
  return rows;
}

}  // namespace qnk
