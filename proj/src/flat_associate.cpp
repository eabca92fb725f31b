#include "qnk/flat_associate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "qnk/error.hpp"
#include "qnk/parallel.hpp"

namespace qnk {

const char* to_string(FlatKind k) {
  switch (k) {
    case FlatKind::Tri3: return "Tri3";
    case FlatKind::QuadCone: return "QuadCone";
    case FlatKind::FaceRegion: return "FaceRegion";
    case FlatKind::CornerCap: return "CornerCap";
  }
  return "?";
}

namespace {

double span_scale(const std::vector<Vec3>& pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) s = std::max(s, distance(pts[i], pts[j]));
  return s;
}

bool degenerate(const Vec3& a, const Vec3& b, const Vec3& c, double scale) {
  return triangle_area(a, b, c) <= 1e-14 * scale * scale;
}

bool contains(const Tri& f, int v) { return std::find(f.begin(), f.end(), v) != f.end(); }

bool edge_in_face(const Complex3& c, int e, const Tri& f) {
  const Seg& s = c.edges()[e];
  return contains(f, s[0]) && contains(f, s[1]);
}

double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

bool segments_cross(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c,
                    const std::array<double, 2>& d) {
  const double d1 = cross2(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1]);
  const double d2 = cross2(b[0] - a[0], b[1] - a[1], d[0] - a[0], d[1] - a[1]);
  const double d3 = cross2(d[0] - c[0], d[1] - c[1], a[0] - c[0], a[1] - c[1]);
  const double d4 = cross2(d[0] - c[0], d[1] - c[1], b[0] - c[0], b[1] - c[1]);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

void check_simple(const std::vector<Vec3>& pts, const Vec3& normal) {
  const double scale = span_scale(pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) <= 1e-12 * std::max(scale, 1e-300))
        throw Error(ErrorKind::SelfIntersectingRegion, "region boundary points coincide");
  const std::size_t n = pts.size();
  if (n < 4) return;
  const Vec3 w = normalized(normal);
  const Vec3 helper = std::abs(w.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = normalized(cross(helper, w)), v = cross(w, u);
  std::vector<std::array<double, 2>> q;
  for (auto& p : pts) q.push_back({dot(p, u), dot(p, v)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(q[i], q[(i + 1) % n], q[j], q[(j + 1) % n]))
        throw Error(ErrorKind::SelfIntersectingRegion, "region boundary crosses itself");
    }
}

std::vector<Vec3> positions(const std::vector<BoundaryPoint>& pts) {
  std::vector<Vec3> out;
  for (auto& p : pts) out.push_back(p.pos);
  return out;
}

bool closed_curve_disk(const DiskComponent& d) {
  if (d.loops.size() != 1 || d.loops[0].empty()) return false;
  const int f = d.loops[0][0].face;
  for (auto& p : d.loops[0])
    if (p.edge >= 0 || p.face != f || f < 0) return false;
  return true;
}

}  // namespace

std::vector<Triangle> flat_disk_elementary(const DiskComponent& d) {
  if (d.cls != DiskClass::Elementary3 && d.cls != DiskClass::Elementary4)
    throw Error(ErrorKind::InvalidInput, "disk is not elementary");
  const auto pts = positions(d.edge_points());
  const double scale = span_scale(pts);
  std::vector<Triangle> out;
  if (pts.size() == 3) {
    if (degenerate(pts[0], pts[1], pts[2], scale)) throw Error(ErrorKind::DegenerateSpan, "collinear triangle points");
    out.push_back({pts[0], pts[1], pts[2]});
    return out;
  }
  if (pts.size() != 4) throw Error(ErrorKind::InvalidInput, "elementary disk without 3 or 4 edge points");
  const Vec3 g = (pts[0] + pts[1] + pts[2] + pts[3]) / 4.0;
  for (int i = 0; i < 4; ++i) {
    if (degenerate(g, pts[i], pts[(i + 1) % 4], scale))
      throw Error(ErrorKind::DegenerateSpan, "collinear quad cone points");
    out.push_back({g, pts[i], pts[(i + 1) % 4]});
  }
  return out;
}

int flat_face(const DiskComponent& d, const Complex3& c, int samples) {
  const TamenessReport t = disk_tameness(d, c, samples);
  const auto ep = d.edge_points();
  int best = -1, best_count = -1;
  for (int f : c.tet_faces(d.tet)) {
    if (std::find(t.graph_faces.begin(), t.graph_faces.end(), f) == t.graph_faces.end()) continue;
    int count = 0;
    for (auto& p : ep) count += edge_in_face(c, p.edge, c.faces()[f]);
    if (count > best_count) {
      best_count = count;
      best = f;
    }
  }
  return best;
}

FlatRegionPlan plan_flat_region(const DiskComponent& d, const Complex3& c, int face, int samples) {
  FlatRegionPlan plan;
  plan.face = face;
  const Tri& fv = c.faces()[face];
  if (closed_curve_disk(d)) {
    // a closed curve in a face bounds a region of that face
    if (d.loops[0][0].face != face) throw Error(ErrorKind::NotAGraph, "closed curve lies in another face");
    plan.points = d.loops[0];
    check_simple(positions(plan.points), cross(c.vertices()[fv[1]] - c.vertices()[fv[0]],
                                               c.vertices()[fv[2]] - c.vertices()[fv[0]]));
    return plan;
  }
  const TamenessReport t = disk_tameness(d, c, samples);
  if (std::find(t.graph_faces.begin(), t.graph_faces.end(), face) == t.graph_faces.end())
    throw Error(ErrorKind::NotAGraph, "disk is not a graph over face " + std::to_string(face));
  const auto ep = d.edge_points();
  const std::size_t n = ep.size();
  std::vector<char> capped(n, 0);
  std::vector<std::array<int, 2>> corner_ends;
  for (std::size_t k = 0; k < n && n > 3; ++k) {
    const std::size_t k1 = (k + 1) % n, k2 = (k + 2) % n;
    if (!edge_in_face(c, ep[k].edge, fv) || edge_in_face(c, ep[k1].edge, fv) || !edge_in_face(c, ep[k2].edge, fv))
      continue;
    const Seg &e1 = c.edges()[ep[k].edge], &e2 = c.edges()[ep[k1].edge], &e3 = c.edges()[ep[k2].edge];
    if (ep[k].edge == ep[k2].edge) continue;
    for (int v : e1) {
      if (!contains(fv, v)) continue;
      if ((e2[0] == v || e2[1] == v) && (e3[0] == v || e3[1] == v)) {
        capped[k1] = 1;
        corner_ends.push_back({static_cast<int>(k), static_cast<int>(k2)});
        plan.corner_vertices.push_back(v);
      }
    }
  }
  std::vector<int> index_in_plan(n, -1);
  for (std::size_t k = 0; k < n; ++k)
    if (edge_in_face(c, ep[k].edge, fv)) {
      index_in_plan[k] = static_cast<int>(plan.points.size());
      plan.points.push_back(ep[k]);
    }
  for (auto& ce : corner_ends) plan.corners.push_back({index_in_plan[ce[0]], index_in_plan[ce[1]]});
  check_simple(positions(plan.points), cross(c.vertices()[fv[1]] - c.vertices()[fv[0]],
                                             c.vertices()[fv[2]] - c.vertices()[fv[0]]));
  return plan;
}

namespace {

struct PlannedTriangle {
  Triangle p;
  std::array<int, 3> slot;  // >= 0: plan point index; -1: centroid; <= -2: corner vertex -(k+2)
  FlatKind kind;
};

std::vector<PlannedTriangle> region_triangles(const FlatRegionPlan& plan, const Complex3& c) {
  std::vector<PlannedTriangle> out;
  const auto pts = positions(plan.points);
  double scale = span_scale(pts);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (degenerate(pts[0], pts[i], pts[i + 1], scale)) continue;
    out.push_back({{pts[0], pts[i], pts[i + 1]}, {0, static_cast<int>(i), static_cast<int>(i + 1)}, FlatKind::FaceRegion});
  }
  for (std::size_t k = 0; k < plan.corners.size(); ++k) {
    const auto [a, b] = plan.corners[k];
    const Vec3 v = c.vertices()[plan.corner_vertices[k]];
    out.push_back({{pts[a], pts[b], v}, {a, b, -static_cast<int>(k) - 2}, FlatKind::CornerCap});
  }
  return out;
}

}  // namespace

std::vector<Triangle> flat_disk_nonnormal(const DiskComponent& d, const Complex3& c, int face, int samples) {
  std::vector<Triangle> out;
  for (auto& t : region_triangles(plan_flat_region(d, c, face, samples), c)) out.push_back(t.p);
  return out;
}

FlatAssociateSurface build_flat_associate(const IntersectionPattern& p, const Complex3& c, int samples) {
  if (!is_quasi_normal(p).holds && !is_internally_quasi_normal(p, c).holds)
    throw Error(ErrorKind::InvalidInput, "pattern is not quasi-normal");

  struct DiskPlan {
    std::vector<PlannedTriangle> tris;
    FlatRegionPlan region;
    bool is_region = false;
  };
  std::vector<DiskPlan> plans(p.components.size());
  parallel_for(p.components.size(), [&](std::size_t i) {
    const DiskComponent& d = p.components[i];
    DiskPlan& dp = plans[i];
    if (d.cls == DiskClass::Elementary3 || d.cls == DiskClass::Elementary4) {
      const auto tris = flat_disk_elementary(d);
      for (auto& t : tris) {
        if (d.cls == DiskClass::Elementary3) {
          dp.tris.push_back({t, {0, 1, 2}, FlatKind::Tri3});
        } else {
          const int k = static_cast<int>(dp.tris.size());
          dp.tris.push_back({t, {-1, k, (k + 1) % 4}, FlatKind::QuadCone});
        }
      }
      return;
    }
    int face = closed_curve_disk(d) ? d.loops[0][0].face : flat_face(d, c, samples);
    if (face < 0) throw Error(ErrorKind::NotAGraph, "disk " + std::to_string(d.id) + " is not a graph over any face");
    dp.is_region = true;
    dp.region = plan_flat_region(d, c, face, samples);
    dp.tris = region_triangles(dp.region, c);
  });

  FlatAssociateSurface out;
  out.ambient = c.ambient();
  std::map<std::tuple<int, PointKey, int>, int> vertex_ids;
  auto vertex = [&](const std::tuple<int, PointKey, int>& key, Vec3 pos) {
    auto [it, fresh] = vertex_ids.emplace(key, static_cast<int>(out.vertices.size()));
    if (fresh) {
      if (out.ambient.is_torus())
        for (int k = 0; k < 3; ++k) pos[k] -= std::floor(pos[k] / out.ambient.period[k]) * out.ambient.period[k];
      out.vertices.push_back(pos);
    }
    return it->second;
  };
  std::map<std::pair<int, std::vector<PointKey>>, int> region_ids;

  for (std::size_t i = 0; i < p.components.size(); ++i) {
    const DiskComponent& d = p.components[i];
    const DiskPlan& dp = plans[i];
    std::vector<BoundaryPoint> pts = dp.is_region ? dp.region.points : d.edge_points();
    int region = -1;
    if (dp.is_region) {
      std::vector<PointKey> keys;
      for (auto& bp : pts) keys.push_back(normalize_key(bp.key, c));
      std::sort(keys.begin(), keys.end());
      auto [it, fresh] = region_ids.emplace(std::make_pair(c.face_class(dp.region.face), keys),
                                            static_cast<int>(out.regions.size()));
      region = it->second;
      if (!fresh) {
        out.regions[region].components.push_back(d.id);
        ++out.multiplicity[region];
        continue;
      }
      FlatRegion r;
      r.id = region;
      r.face = dp.region.face;
      r.boundary = positions(pts);
      r.components = {d.id};
      out.regions.push_back(std::move(r));
      out.multiplicity[region] = 1;
    }
    for (auto& pt : dp.tris) {
      FlatTriangle ft;
      ft.p = pt.p;
      ft.tet = d.tet;
      ft.component = d.id;
      ft.kind = pt.kind;
      ft.region = region;
      for (int k = 0; k < 3; ++k) {
        const int s = pt.slot[k];
        if (s >= 0) {
          ft.v[k] = vertex({0, normalize_key(pts[s].key, c), 0}, pt.p[k]);
        } else if (s == -1) {
          ft.v[k] = vertex({1, PointKey{}, d.id}, pt.p[k]);
        } else {
          ft.v[k] = vertex({2, PointKey{}, c.vertex_class(dp.region.corner_vertices[-s - 2])}, pt.p[k]);
        }
      }
      if (dot(cross(ft.p[1] - ft.p[0], ft.p[2] - ft.p[0]), d.normal_sum) < 0) {
        std::swap(ft.p[1], ft.p[2]);
        std::swap(ft.v[1], ft.v[2]);
      }
      out.triangles.push_back(ft);
    }
  }

  // every straightened arc is shared by exactly two disks, except on boundary faces
  std::map<std::tuple<int, PointKey, PointKey>, std::pair<int, int>> seen;  // -> (count, face)
  for (const auto& d : p.components) {
    for (const auto& loop : d.loops) {
      std::vector<std::size_t> te;
      for (std::size_t j = 0; j < loop.size(); ++j)
        if (loop[j].edge >= 0) te.push_back(j);
      for (std::size_t m = 0; m < te.size(); ++m) {
        const BoundaryPoint &a = loop[te[m]], &b = loop[te[(m + 1) % te.size()]];
        PointKey ka = normalize_key(a.key, c), kb = normalize_key(b.key, c);
        if (kb < ka) std::swap(ka, kb);
        auto& e = seen[{c.face_class(a.face), ka, kb}];
        ++e.first;
        e.second = a.face;
      }
    }
  }
  for (auto& [key, e] : seen) {
    if (!c.ambient().is_torus() && c.face_label(e.second) == FaceLabel::Boundary) continue;
    ++out.gluing.segments;
    if (e.first != 2) ++out.gluing.unmatched;
  }
  out.gluing.ok = out.gluing.unmatched == 0;
  if (!out.gluing.ok)
    throw Error(ErrorKind::GluingMismatch, std::to_string(out.gluing.unmatched) + " boundary segments not matched in pairs");
  return out;
}

SurfaceMesh FlatAssociateSurface::to_mesh() const {
  SurfaceMesh s;
  s.ambient = ambient;
  s.vertices = vertices;
  for (auto& t : triangles) s.triangles.push_back(t.v);
  return s;
}

double surface_area(const FlatAssociateSurface& f) {
  double a = 0.0;
  for (auto& t : f.triangles) a += triangle_area(t.p[0], t.p[1], t.p[2]);
  return a;
}

double multiple_area(const FlatAssociateSurface& f) {
  double a = 0.0;
  for (auto& t : f.triangles) {
    int m = 1;
    if (t.region >= 0) {
      auto it = f.multiplicity.find(t.region);
      if (it != f.multiplicity.end()) m = it->second;
    }
    a += m * triangle_area(t.p[0], t.p[1], t.p[2]);
  }
  return a;
}

}  // namespace qnk
