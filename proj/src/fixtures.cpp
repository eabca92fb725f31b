#include "qnk/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qnk/error.hpp"
#include "qnk/normal_curves.hpp"

namespace qnk::fixtures {

std::array<Vec3, 4> regular_tet_points(double a) {
  return {Vec3{0, 0, 0}, Vec3{a, 0, 0}, Vec3{a / 2, a * std::sqrt(3.0) / 2, 0},
          Vec3{a / 2, a * std::sqrt(3.0) / 6, a * std::sqrt(2.0 / 3.0)}};
}

std::array<Vec3, 4> almost_regular_tet_points(double rho) {
  const double h = rho / std::sqrt(2.0);
  return {Vec3{-h, 0, 0}, Vec3{h, 0, 0}, Vec3{0, h, 0}, Vec3{0, 0, h}};
}

std::array<Vec3, 4> needle_tet_points(double height) {
  return {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0.5, std::sqrt(3.0) / 2, 0},
          Vec3{0.5, std::sqrt(3.0) / 6, height}};
}

Complex3 single_tet(const std::array<Vec3, 4>& p) {
  return build_complex({p[0], p[1], p[2], p[3]}, {{0, 1, 2, 3}});
}

Complex3 regular_tet(double edge) { return single_tet(regular_tet_points(edge)); }

Complex3 cube_corner_tet() {
  return single_tet({Vec3{1, 1, 1}, Vec3{1, -1, -1}, Vec3{-1, 1, -1}, Vec3{-1, -1, 1}});
}

Complex3 two_glued_tets() {
  auto p = regular_tet_points();
  Vec3 mirror = p[3];
  mirror.z = -mirror.z;
  return build_complex({p[0], p[1], p[2], p[3], mirror}, {{0, 1, 2, 3}, {0, 1, 2, 4}});
}

Complex3 kuhn_grid(int n, double size, bool torus) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "kuhn_grid needs n >= 1");
  const double h = size / n;
  auto id = [n](int i, int j, int k) { return i + (n + 1) * (j + (n + 1) * k); };
  std::vector<Vec3> verts;
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) verts.push_back({i * h, j * h, k * h});
  static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Tet> tets;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (auto& perm : kPerm) {
          std::array<int, 3> c{i, j, k};
          Tet t{};
          t[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[perm[s]];
            t[s + 1] = id(c[0], c[1], c[2]);
          }
          tets.push_back(t);
        }
  return build_complex(std::move(verts), std::move(tets),
                       torus ? AmbientModel::torus({size, size, size}) : AmbientModel::euclidean());
}

Complex3 barycentric_subdivide(const Complex3& c) {
  std::vector<Vec3> verts = c.vertices();
  std::map<std::vector<int>, int> ids;
  auto point_of = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    if (s.size() == 1) return s[0];
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    Vec3 p{};
    for (int v : s) p += c.vertices()[v];
    verts.push_back(p / static_cast<double>(s.size()));
    const int id = static_cast<int>(verts.size()) - 1;
    ids.emplace(s, id);
    return id;
  };
  std::vector<Tet> tets;
  for (const Tet& t : c.tets()) {
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
      tets.push_back({point_of({t[perm[0]]}), point_of({t[perm[0]], t[perm[1]]}),
                      point_of({t[perm[0]], t[perm[1]], t[perm[2]]}),
                      point_of({t[0], t[1], t[2], t[3]})});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return build_complex(std::move(verts), std::move(tets), c.ambient());
}

SurfaceMesh torus_plane(int n, double height, double period) {
  SurfaceMesh s;
  s.ambient = AmbientModel::torus({period, period, period});
  // Irrational-looking offsets keep vertices and edges off the dyadic grid planes.
  constexpr double ox = 0.3137, oy = 0.6571;
  const double h = period / n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) s.vertices.push_back({(i + ox) * h, (j + oy) * h, height});
  auto id = [n](int i, int j) { return (i % n) + n * (j % n); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      s.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      s.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return s;
}

SurfaceMesh icosphere(const Vec3& center, double radius, int refinements) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p = normalized(p);
  std::vector<Tri> f = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                        {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
                        {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  for (int r = 0; r < refinements; ++r) {
    std::map<std::pair<int, int>, int> mid;
    auto m = [&](int a, int b) {
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back(normalized(v[a] + v[b]));
      mid[key] = static_cast<int>(v.size()) - 1;
      return static_cast<int>(v.size()) - 1;
    };
    std::vector<Tri> g;
    for (auto& tri : f) {
      const int a = m(tri[0], tri[1]), b = m(tri[1], tri[2]), c = m(tri[2], tri[0]);
      g.push_back({tri[0], a, c});
      g.push_back({tri[1], b, a});
      g.push_back({tri[2], c, b});
      g.push_back({a, b, c});
    }
    f = std::move(g);
  }
  SurfaceMesh s;
  for (auto& p : v) s.vertices.push_back(center + p * radius);
  s.triangles = std::move(f);
  return s;
}

SurfaceMesh sphere_cap(const Vec3& center, double radius, const Vec3& axis, double cap_angle, int rings) {
  const Vec3 w = normalized(axis);
  const Vec3 helper = std::abs(w.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = normalized(cross(helper, w));
  const Vec3 e2 = cross(w, e1);
  SurfaceMesh s;
  s.vertices.push_back(center + w * radius);
  std::vector<int> prev{0};
  for (int k = 1; k <= rings; ++k) {
    const double th = cap_angle * k / rings;
    const int count = 6 * k;
    std::vector<int> ring;
    for (int i = 0; i < count; ++i) {
      const double ph = 2.0 * std::numbers::pi * i / count;
      const Vec3 dir = w * std::cos(th) + (e1 * std::cos(ph) + e2 * std::sin(ph)) * std::sin(th);
      ring.push_back(static_cast<int>(s.vertices.size()));
      s.vertices.push_back(center + dir * radius);
    }
    if (prev.size() == 1) {
      for (int i = 0; i < count; ++i) s.triangles.push_back({0, ring[i], ring[(i + 1) % count]});
    } else {
      // Merge the two rings by angle.
      const int a = static_cast<int>(prev.size()), b = count;
      int i = 0, j = 0;
      while (i < a || j < b) {
        const double next_a = static_cast<double>(i + 1) / a, next_b = static_cast<double>(j + 1) / b;
        if (j < b && (i >= a || next_b <= next_a)) {
          s.triangles.push_back({prev[i % a], ring[j], ring[(j + 1) % b]});
          ++j;
        } else {
          s.triangles.push_back({prev[i % a], ring[j % b], prev[(i + 1) % a]});
          ++i;
        }
      }
    }
    prev = std::move(ring);
  }
  return s;
}

SurfaceMesh single_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
  SurfaceMesh s;
  s.vertices = {a, b, c};
  s.triangles = {{0, 1, 2}};
  return s;
}

SurfaceMesh cone(const Vec3& apex, const std::vector<Vec3>& polygon) {
  SurfaceMesh s;
  s.vertices.push_back(apex);
  const int n = static_cast<int>(polygon.size());
  for (auto& p : polygon) s.vertices.push_back(p);
  for (int i = 0; i < n; ++i) s.triangles.push_back({0, 1 + i, 1 + (i + 1) % n});
  return s;
}

SurfaceMesh planar_patch(const Vec3& origin, const Vec3& u, const Vec3& v, int nu, int nv) {
  SurfaceMesh s;
  for (int j = 0; j <= nv; ++j)
    for (int i = 0; i <= nu; ++i)
      s.vertices.push_back(origin + u * (static_cast<double>(i) / nu) + v * (static_cast<double>(j) / nv));
  auto id = [nu](int i, int j) { return i + (nu + 1) * j; };
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      s.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      s.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return s;
}

}  // namespace qnk::fixtures

namespace qnk::fixtures {

namespace {

SurfaceMesh extended_cone(const Vec3& apex, const std::vector<Vec3>& loop, double factor) {
  std::vector<Vec3> poly;
  for (auto& p : loop) poly.push_back(apex + (p - apex) * factor);
  return cone(apex, poly);
}

// Graph z = h(x, y) over [x0,x1]x[y0,y1], n x n cells.
template <class H>
SurfaceMesh height_field(H h, double x0, double x1, double y0, double y1, int n) {
  SurfaceMesh s;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double x = x0 + (x1 - x0) * i / n, y = y0 + (y1 - y0) * j / n;
      s.vertices.push_back({x, y, h(x, y)});
    }
  auto id = [n](int i, int j) { return i + (n + 1) * j; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      s.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      s.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return s;
}

}  // namespace

SurfaceMesh tilted_sphere(const Vec3& center, double radius, int refinements) {
  SurfaceMesh s = icosphere({0, 0, 0}, 1.0, refinements);
  const double a = 0.4123, b = 0.7351, g = 0.2718;
  auto rot = [](Vec3 p, int i, int j, double t) {
    const double x = p[i], y = p[j];
    p[i] = std::cos(t) * x - std::sin(t) * y;
    p[j] = std::sin(t) * x + std::cos(t) * y;
    return p;
  };
  for (auto& v : s.vertices) v = center + rot(rot(rot(v, 0, 1, a), 1, 2, b), 0, 2, g) * radius;
  return s;
}

Scene corner_triangle_scene() {
  Scene sc{cube_corner_tet(), {}};
  const auto tp = sc.complex.tet_points(0);
  std::vector<Vec3> q;
  for (int k = 1; k < 4; ++k) q.push_back(lerp(tp[0], tp[k], 0.3));
  const Vec3 g = (q[0] + q[1] + q[2]) / 3.0;
  sc.surface = single_triangle(g + (q[0] - g) * 1.2, g + (q[1] - g) * 1.2, g + (q[2] - g) * 1.2);
  return sc;
}

Scene quad_scene() {
  return {cube_corner_tet(), planar_patch({0.1, -1.5, -1.5}, {0, 2.8, 0}, {0, 0, 2.8}, 1, 1)};
}

Scene octagon_scene() {
  Scene sc{cube_corner_tet(), {}};
  const auto tp = sc.complex.tet_points(0);
  const auto curves = connected_normal_curves(8);
  if (curves.empty()) throw Error(ErrorKind::InvalidInput, "no normal curve of length 8");
  const NormalCurveCounts& nc = curves.front();
  // Points are (edge (i<j), rank from i). An arc in face f around vertex i joins
  // rank r on both edges at i.
  auto others = [](int f) {
    std::array<int, 3> o{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
      if (v != f) o[n++] = v;
    return o;
  };
  auto weight = [&](int i, int j) {
    for (int f = 0; f < 4; ++f) {
      if (f == i || f == j) continue;
      const auto o = others(f);
      int w = 0;
      for (int k = 0; k < 3; ++k)
        if (o[k] == i || o[k] == j) w += nc.corner[f][k];
      return w;
    }
    return 0;
  };
  using Pt = std::pair<std::pair<int, int>, int>;
  auto point = [&](int i, int j, int rank_from_i) -> Pt {
    if (i < j) return {{i, j}, rank_from_i};
    return {{j, i}, weight(i, j) - 1 - rank_from_i};
  };
  std::map<Pt, std::vector<Pt>> adj;
  for (int f = 0; f < 4; ++f) {
    const auto o = others(f);
    for (int k = 0; k < 3; ++k) {
      const int i = o[k], j = o[(k + 1) % 3], l = o[(k + 2) % 3];
      for (int r = 0; r < nc.corner[f][k]; ++r) {
        const Pt a = point(i, j, r), b = point(i, l, r);
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  std::vector<Vec3> loop;
  Pt prev = adj.begin()->first, cur = adj.begin()->second[0];
  const Pt start = prev;
  loop.push_back(lerp(tp[start.first.first], tp[start.first.second],
                      (start.second + 1.0) / (weight(start.first.first, start.first.second) + 1.0)));
  while (cur != start) {
    const auto [i, j] = cur.first;
    loop.push_back(lerp(tp[i], tp[j], (cur.second + 1.0) / (weight(i, j) + 1.0)));
    const auto& nb = adj[cur];
    const Pt next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  // cone over arc midpoints keeps the surface edges off the tet edges
  Vec3 apex{};
  for (auto& p : loop) apex += p;
  apex = apex / static_cast<double>(loop.size());
  std::vector<Vec3> mids;
  for (std::size_t k = 0; k < loop.size(); ++k) mids.push_back(midpoint(loop[k], loop[(k + 1) % loop.size()]));
  sc.surface = extended_cone(apex, mids, 3.0);
  return sc;
}

Scene lune_scene() {
  // dome over the base face, crossing it in a half circle around edge v0v1
  auto h = [](double x, double y) { return 0.5 * (0.15 * 0.15 - (x - 0.45) * (x - 0.45) - y * y); };
  return {regular_tet(), height_field(h, 0.1037, 0.8129, -0.3071, 0.3389, 24)};
}

Scene cylinder_scene() {
  // bowl through the shared face: below it inside a half circle around edge v0v1,
  // above it elsewhere
  auto h = [](double x, double y) { return 0.5 * ((x - 0.45) * (x - 0.45) + y * y - 0.15 * 0.15); };
  return {two_glued_tets(), height_field(h, -0.3037, 1.3129, -0.3071, 1.1389, 48)};
}

Scene corner_disk_scene() {
  Scene sc{single_tet({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}), {}};
  const std::vector<Vec3> loop = {{0.2, 0, 0},   {0, 0, 0.2},     {0, 0.2, 0},
                                  {0.3, 0.7, 0}, {0.4, 0.5, 0.1}, {0.7, 0.3, 0}};
  sc.surface = extended_cone({0.3, 0.3, 0.05}, loop, 1.2);
  return sc;
}

Scene fold_scene() {
  Scene sc{cube_corner_tet(), {}};
  const std::array<std::array<double, 2>, 4> xz = {{{-2.6, -0.7}, {0.4, -0.1}, {-0.4, 0.1}, {2.6, 0.7}}};
  const int ny = 6;
  SurfaceMesh& s = sc.surface;
  for (int j = 0; j <= ny; ++j)
    for (auto& p : xz) s.vertices.push_back({p[0], -1.5 + 3.0 * j / ny, p[1]});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < 3; ++i) {
      const int a = 4 * j + i, b = a + 1, c = a + 4, d = a + 5;
      s.triangles.push_back({a, b, d});
      s.triangles.push_back({a, d, c});
    }
  return sc;
}

Scene closed_cap_scene(bool through_shared_face) {
  Scene sc{through_shared_face ? two_glued_tets() : regular_tet(), {}};
  const auto tp = sc.complex.tet_points(0);
  const Vec3 g = (tp[0] + tp[1] + tp[2]) / 3.0;  // the base face z = 0
  // mostly above the base face, poking 0.03 through it
  sc.surface = tilted_sphere(g + Vec3{0, 0, 0.09}, 0.12, 2);
  return sc;
}

Scene peripheral_bent_scene() {
  return {kuhn_grid(1, 1.0), tilted_sphere({0.45, 0, 0}, 0.12, 2)};
}

}  // namespace qnk::fixtures
