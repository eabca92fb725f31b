#include "qnk/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "qnk/error.hpp"
#include "qnk/parallel.hpp"

namespace qnk {

ParamCurveEdge ParamCurveEdge::from_polyline(int edge_id, std::vector<Vec3> pts) {
  if (pts.size() < 2) throw Error(ErrorKind::InvalidInput, "edge polyline needs two points");
  ParamCurveEdge e;
  e.edge_id = edge_id;
  e.polyline = std::move(pts);
  e.arclength.assign(1, 0.0);
  for (std::size_t i = 1; i < e.polyline.size(); ++i)
    e.arclength.push_back(e.arclength.back() + distance(e.polyline[i - 1], e.polyline[i]));
  e.straight_span = {e.polyline.front(), e.polyline.back()};
  return e;
}

double ParamCurveEdge::sagitta() const {
  double s = 0.0;
  const Vec3 a = straight_span[0], b = straight_span[1];
  for (const Vec3& p : polyline) {
    const Vec3 d = b - a;
    const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    s = std::max(s, distance(p, a + d * t));
  }
  return s;
}

double edge_parameter(const Vec3& x, const ParamCurveEdge& e, double tol) {
  const double len = e.length();
  if (len <= 0.0) throw Error(ErrorKind::DegenerateSimplex, "edge of zero length");
  double best = std::numeric_limits<double>::infinity(), best_s = 0.0;
  for (std::size_t i = 0; i + 1 < e.polyline.size(); ++i) {
    const Vec3 a = e.polyline[i], d = e.polyline[i + 1] - a;
    const double dd = dot(d, d);
    const double t = dd > 0 ? std::clamp(dot(x - a, d) / dd, 0.0, 1.0) : 0.0;
    const double dist = distance(x, a + d * t);
    if (dist < best) {
      best = dist;
      best_s = e.arclength[i] + t * (e.arclength[i + 1] - e.arclength[i]);
    }
  }
  if (best > tol * len)
    throw Error(ErrorKind::PointNotOnEdge, "point is " + std::to_string(best) + " away from edge " +
                                               std::to_string(e.edge_id));
  return best_s / len;
}

Vec3 project_point_to_edge(const Vec3& x, const ParamCurveEdge& e, double tol) {
  return lerp(e.straight_span[0], e.straight_span[1], edge_parameter(x, e, tol));
}

CurvedEdgeTable straight_edge_table(const Complex3& c) {
  CurvedEdgeTable t;
  for (std::size_t i = 0; i < c.edges().size(); ++i) {
    const Seg& s = c.edges()[i];
    t.push_back(ParamCurveEdge::from_polyline(static_cast<int>(i), {c.vertices()[s[0]], c.vertices()[s[1]]}));
  }
  return t;
}

CurvedEdgeTable warp_edge_table(const Complex3& c, const std::function<Vec3(const Vec3&)>& warp, int segments) {
  CurvedEdgeTable t;
  for (std::size_t i = 0; i < c.edges().size(); ++i) {
    const Seg& s = c.edges()[i];
    std::vector<Vec3> pts;
    for (int k = 0; k <= segments; ++k)
      pts.push_back(warp(lerp(c.vertices()[s[0]], c.vertices()[s[1]], static_cast<double>(k) / segments)));
    t.push_back(ParamCurveEdge::from_polyline(static_cast<int>(i), std::move(pts)));
  }
  return t;
}

Complex3 linearize_complex(const Complex3& c, const CurvedEdgeTable& table) {
  if (table.size() != c.edges().size()) throw Error(ErrorKind::InvalidInput, "edge table does not cover the complex");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Seg& s = c.edges()[i];
    const double len = distance(c.vertices()[s[0]], c.vertices()[s[1]]);
    if (distance(table[i].straight_span[0], c.vertices()[s[0]]) > 1e-12 * len ||
        distance(table[i].straight_span[1], c.vertices()[s[1]]) > 1e-12 * len)
      throw Error(ErrorKind::InvalidInput, "curved edge " + std::to_string(i) + " does not end at its vertices");
  }
  // vertices are fixed and the simplices are spanned by them, so the straight
  // complex is the input with its edge table dropped
  return c;
}

std::vector<Triangle> build_pl_disk(const std::vector<Vec3>& q) {
  double scale = 0.0;
  for (auto& a : q)
    for (auto& b : q) scale = std::max(scale, distance(a, b));
  auto check = [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    if (triangle_area(a, b, c) <= 1e-14 * scale * scale)
      throw Error(ErrorKind::DegenerateSpan, "collinear points in a PL disk");
  };
  if (q.size() == 3) {
    check(q[0], q[1], q[2]);
    return {{q[0], q[1], q[2]}};
  }
  if (q.size() != 4) throw Error(ErrorKind::InvalidInput, "PL disk needs 3 or 4 points");
  const double a02 = triangle_area(q[0], q[1], q[2]) + triangle_area(q[0], q[2], q[3]);
  const double a13 = triangle_area(q[1], q[2], q[3]) + triangle_area(q[1], q[3], q[0]);
  bool use02;
  if (std::abs(a02 - a13) <= 1e-12 * std::max(a02, a13)) {
    auto key = [](const Vec3& a, const Vec3& b) {
      auto ta = std::make_tuple(a.x, a.y, a.z), tb = std::make_tuple(b.x, b.y, b.z);
      return ta < tb ? std::make_pair(ta, tb) : std::make_pair(tb, ta);
    };
    use02 = key(q[0], q[2]) <= key(q[1], q[3]);
  } else {
    use02 = a02 < a13;
  }
  std::vector<Triangle> out;
  if (use02) {
    out = {{q[0], q[1], q[2]}, {q[0], q[2], q[3]}};
  } else {
    out = {{q[1], q[2], q[3]}, {q[1], q[3], q[0]}};
  }
  for (auto& t : out) check(t[0], t[1], t[2]);
  return out;
}

std::map<PointKey, Vec3> project_edge_points(const IntersectionPattern& p, const Complex3& c,
                                             const CurvedEdgeTable& table) {
  std::map<PointKey, Vec3> out;
  for (const auto& d : p.components)
    for (const auto& loop : d.loops)
      for (const auto& bp : loop) {
        if (bp.edge < 0) continue;
        const PointKey k = normalize_key(bp.key, c);
        if (out.count(k)) continue;
        // one computation per point, stored in the reduced chart of its edge class
        const Vec3 x = project_point_to_edge(bp.pos, table.at(bp.edge), 1e-9);
        out.emplace(k, x - c.ambient().shift_vector(c.edge_shift(bp.edge)));
      }
  return out;
}

SurfaceMesh build_pl_surface(const IntersectionPattern& p, const Complex3& c_hat, int samples) {
  return build_pl_surface(p, c_hat, straight_edge_table(c_hat), samples);
}

SurfaceMesh build_pl_surface(const IntersectionPattern& p, const Complex3& c, const CurvedEdgeTable& table,
                             int samples) {
  if (!is_quasi_normal(p).holds && !is_internally_quasi_normal(p, c).holds)
    throw Error(ErrorKind::InvalidInput, "pattern is not quasi-normal");
  const auto projected = project_edge_points(p, c, table);

  struct Piece {
    std::vector<std::array<std::tuple<int, PointKey, int>, 3>> keys;
    std::vector<Triangle> tris;
  };
  std::vector<Piece> pieces(p.components.size());
  std::vector<char> skip(p.components.size(), 0);
  parallel_for(p.components.size(), [&](std::size_t i) {
    const DiskComponent& d = p.components[i];
    Piece& pc = pieces[i];
    // shared projection moved into this tet's chart
    auto place = [&](const BoundaryPoint& bp) {
      return projected.at(normalize_key(bp.key, c)) + c.ambient().shift_vector(c.edge_shift(bp.edge));
    };
    std::vector<BoundaryPoint> pts;
    std::vector<std::tuple<int, PointKey, int>> vkeys;
    std::vector<Vec3> pos;
    std::vector<Triangle> tris;
    std::vector<std::array<int, 3>> slots;
    if (d.cls == DiskClass::Elementary3 || d.cls == DiskClass::Elementary4) {
      pts = d.edge_points();
      for (auto& bp : pts) pos.push_back(place(bp));
      tris = build_pl_disk(pos);
      for (auto& t : tris) {
        std::array<int, 3> sl{};
        for (int k = 0; k < 3; ++k)
          for (std::size_t j = 0; j < pos.size(); ++j)
            if (t[k] == pos[j]) sl[k] = static_cast<int>(j);
        slots.push_back(sl);
      }
    } else {
      const int face = flat_face(d, c, samples);
      if (face < 0) throw Error(ErrorKind::NotAGraph, "disk " + std::to_string(d.id) + " is not a graph over any face");
      const FlatRegionPlan plan = plan_flat_region(d, c, face, samples);
      pts = plan.points;
      for (auto& bp : pts) pos.push_back(bp.edge >= 0 ? place(bp) : bp.pos);
      double scale = 0.0;
      for (auto& a : pos) scale = std::max(scale, distance(a, pos[0]));
      for (std::size_t j = 1; j + 1 < pos.size(); ++j) {
        if (triangle_area(pos[0], pos[j], pos[j + 1]) <= 1e-14 * scale * scale) continue;
        tris.push_back({pos[0], pos[j], pos[j + 1]});
        slots.push_back({0, static_cast<int>(j), static_cast<int>(j + 1)});
      }
      for (std::size_t k = 0; k < plan.corners.size(); ++k) {
        const auto [a, b] = plan.corners[k];
        tris.push_back({pos[a], pos[b], c.vertices()[plan.corner_vertices[k]]});
        slots.push_back({a, b, -2 - static_cast<int>(k)});
      }
      for (auto& sl : slots)
        for (int& s : sl)
          if (s <= -2) s = -2 - c.vertex_class(plan.corner_vertices[-s - 2]);
    }
    for (std::size_t t = 0; t < tris.size(); ++t) {
      Triangle tri = tris[t];
      std::array<std::tuple<int, PointKey, int>, 3> key;
      for (int k = 0; k < 3; ++k) {
        const int s = slots[t][k];
        key[k] = s >= 0 ? std::make_tuple(0, normalize_key(pts[s].key, c), 0) : std::make_tuple(2, PointKey{}, -s - 2);
      }
      if (dot(cross(tri[1] - tri[0], tri[2] - tri[0]), d.normal_sum) < 0) {
        std::swap(tri[1], tri[2]);
        std::swap(key[1], key[2]);
      }
      pc.tris.push_back(tri);
      pc.keys.push_back(key);
    }
  });

  SurfaceMesh out;
  out.ambient = c.ambient();
  std::map<std::tuple<int, PointKey, int>, int> ids;
  std::set<std::array<int, 3>> emitted;
  for (auto& pc : pieces)
    for (std::size_t t = 0; t < pc.tris.size(); ++t) {
      Tri tri{};
      for (int k = 0; k < 3; ++k) {
        auto [it, fresh] = ids.emplace(pc.keys[t][k], static_cast<int>(out.vertices.size()));
        if (fresh) {
          Vec3 v = pc.tris[t][k];
          if (out.ambient.is_torus())
            for (int a = 0; a < 3; ++a) v[a] -= std::floor(v[a] / out.ambient.period[a]) * out.ambient.period[a];
          out.vertices.push_back(v);
        }
        tri[k] = it->second;
      }
      std::array<int, 3> sorted = tri;
      std::sort(sorted.begin(), sorted.end());
      if (!emitted.insert(sorted).second) continue;  // regions shared by several disks
      out.triangles.push_back(tri);
    }
  try {
    const auto topo = surface_topology(out);
    if (c.ambient().is_torus() && topo.boundary_edges > 0)
      throw Error(ErrorKind::GluingMismatch, "PL surface has open edges in a closed ambient");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonManifoldSurface) throw Error(ErrorKind::GluingMismatch, e.what());
    throw;
  }
  return out;
}

}  // namespace qnk
