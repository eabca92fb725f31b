#include "qnk/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "qnk/error.hpp"
#include "qnk/parallel.hpp"

namespace qnk {

const char* to_string(ArcClass c) {
  switch (c) {
    case ArcClass::NormalArc: return "NormalArc";
    case ArcClass::BentCurve: return "BentCurve";
    case ArcClass::ClosedCurve: return "ClosedCurve";
    case ArcClass::OpenArc: return "OpenArc";
  }
  return "?";
}

const char* to_string(DiskClass c) {
  switch (c) {
    case DiskClass::Elementary3: return "Elementary3";
    case DiskClass::Elementary4: return "Elementary4";
    case DiskClass::NormalNGon: return "NormalNGon";
    case DiskClass::NonNormal: return "NonNormal";
    case DiskClass::NonDisk: return "NonDisk";
  }
  return "?";
}

std::vector<BoundaryPoint> DiskComponent::edge_points() const {
  std::vector<BoundaryPoint> out;
  if (loops.empty()) return out;
  for (auto& p : loops[0])
    if (p.edge >= 0) out.push_back(p);
  return out;
}

namespace {

constexpr int kEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

Shift add(const Shift& a, const Shift& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Shift sub(const Shift& a, const Shift& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

struct Plane {
  Vec3 o, n;
  double eval(const Vec3& x) const { return dot(n, x - o); }
};

Plane face_plane(const Complex3& c, int f) {
  const Tri& v = c.faces()[f];
  const Vec3 a = c.vertices()[v[0]], b = c.vertices()[v[1]], d = c.vertices()[v[2]];
  return {a, cross(b - a, d - a)};
}

// Surface prepared for clipping: vertices reduced into the period cell and each
// triangle's vertices unwrapped next to its first one.
struct PreparedSurface {
  AmbientModel amb;
  std::vector<Vec3> verts;
  std::vector<Tri> tris;
  std::vector<std::array<Shift, 3>> unwrap;
  std::set<std::pair<int, int>> boundary_edges;

  Vec3 at(int v, const Shift& k) const { return verts[v] + amb.shift_vector(k); }
  std::array<Vec3, 3> tri_points(int t, const Shift& k) const {
    return {at(tris[t][0], add(k, unwrap[t][0])), at(tris[t][1], add(k, unwrap[t][1])),
            at(tris[t][2], add(k, unwrap[t][2]))};
  }
};

PreparedSurface prepare(const SurfaceMesh& s, const AmbientModel& amb, const Vec3& offset) {
  PreparedSurface p;
  p.amb = amb;
  p.tris = s.triangles;
  p.verts.reserve(s.vertices.size());
  for (Vec3 v : s.vertices) {
    v += offset;
    if (amb.is_torus())
      for (int k = 0; k < 3; ++k) v[k] -= std::floor(v[k] / amb.period[k]) * amb.period[k];
    p.verts.push_back(v);
  }
  p.unwrap.resize(p.tris.size());
  for (std::size_t t = 0; t < p.tris.size(); ++t) {
    p.unwrap[t][0] = {0, 0, 0};
    for (int i = 1; i < 3; ++i) {
      Shift best{0, 0, 0};
      if (amb.is_torus()) {
        const Vec3 a = p.verts[p.tris[t][0]], b = p.verts[p.tris[t][i]];
        double best_d = std::numeric_limits<double>::infinity();
        for (int x = -1; x <= 1; ++x)
          for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) {
              const double d = distance(a, b + amb.shift_vector({x, y, z}));
              if (d < best_d) {
                best_d = d;
                best = {x, y, z};
              }
            }
      }
      p.unwrap[t][i] = best;
    }
  }
  std::map<std::pair<int, int>, int> count;
  for (auto& t : p.tris)
    for (int i = 0; i < 3; ++i) ++count[{std::min(t[i], t[(i + 1) % 3]), std::max(t[i], t[(i + 1) % 3])}];
  for (auto& [e, n] : count)
    if (n == 1) p.boundary_edges.insert(e);
  return p;
}

struct Image {
  int tri;
  Shift k;
  Box3 box;
};

// Uniform grid over image bounding boxes, CSR layout.
class ImageGrid {
 public:
  ImageGrid(const std::vector<Image>& images, const Box3& bounds, double cell) : images_(images) {
    lo_ = bounds.lo;
    for (int k = 0; k < 3; ++k) {
      const double ext = std::max(bounds.hi[k] - bounds.lo[k], 1e-300);
      dims_[k] = std::clamp(static_cast<int>(std::ceil(ext / cell)), 1, 64);
      h_[k] = ext / dims_[k];
    }
    const std::size_t ncell = static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
    start_.assign(ncell + 1, 0);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<int> fill;
      if (pass == 1) {
        for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
        items_.resize(start_[ncell]);
        fill.assign(start_.begin(), start_.end() - 1);
      }
      for (std::size_t i = 0; i < images_.size(); ++i) {
        auto r = range(images_[i].box);
        for (int z = r[0][2]; z <= r[1][2]; ++z)
          for (int y = r[0][1]; y <= r[1][1]; ++y)
            for (int x = r[0][0]; x <= r[1][0]; ++x) {
              const std::size_t c = index(x, y, z);
              if (pass == 0) {
                ++start_[c + 1];
              } else {
                items_[fill[c]++] = static_cast<int>(i);
              }
            }
      }
    }
  }

  std::vector<int> query(const Box3& b) const {
    std::vector<int> out;
    auto r = range(b);
    for (int z = r[0][2]; z <= r[1][2]; ++z)
      for (int y = r[0][1]; y <= r[1][1]; ++y)
        for (int x = r[0][0]; x <= r[1][0]; ++x) {
          const std::size_t c = index(x, y, z);
          for (int i = start_[c]; i < start_[c + 1]; ++i)
            if (images_[items_[i]].box.overlaps(b)) out.push_back(items_[i]);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::array<std::array<int, 3>, 2> range(const Box3& b) const {
    std::array<std::array<int, 3>, 2> r{};
    for (int k = 0; k < 3; ++k) {
      r[0][k] = std::clamp(static_cast<int>(std::floor((b.lo[k] - lo_[k]) / h_[k])), 0, dims_[k] - 1);
      r[1][k] = std::clamp(static_cast<int>(std::floor((b.hi[k] - lo_[k]) / h_[k])), 0, dims_[k] - 1);
    }
    return r;
  }
  std::size_t index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) + dims_[0] * (static_cast<std::size_t>(y) + dims_[1] * static_cast<std::size_t>(z));
  }

  const std::vector<Image>& images_;
  Vec3 lo_, h_;
  std::array<int, 3> dims_{};
  std::vector<int> start_, items_;
};

Box3 tet_box(const Complex3& c, int t) {
  Box3 b;
  for (const Vec3& p : c.tet_points(t)) b.expand(p);
  return b;
}

std::vector<Image> build_images(const PreparedSurface& s, const Box3& domain) {
  std::vector<Image> out;
  const int r = s.amb.is_torus() ? 1 : 0;
  for (std::size_t t = 0; t < s.tris.size(); ++t)
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y)
        for (int z = -r; z <= r; ++z) {
          Image im{static_cast<int>(t), {x, y, z}, {}};
          for (const Vec3& p : s.tri_points(im.tri, im.k)) im.box.expand(p);
          if (im.box.overlaps(domain)) out.push_back(im);
        }
  return out;
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  return distance(p, closest_point_on_triangle(p, a, b, c));
}

bool tet_in_general_position(const Complex3& c, int t, const PreparedSurface& s, const std::vector<Image>& images,
                             const std::vector<int>& cand, double tol) {
  const auto tp = c.tet_points(t);
  for (int ii : cand) {
    const auto q = s.tri_points(images[ii].tri, images[ii].k);
    for (int i = 0; i < 4; ++i) {
      const Vec3 &a = tp[(i + 1) % 4], &b = tp[(i + 2) % 4], &d = tp[(i + 3) % 4];
      for (const Vec3& v : q)
        if (point_triangle_distance(v, a, b, d) < tol) return false;
      if (point_triangle_distance(tp[i], q[0], q[1], q[2]) < tol) return false;
    }
    for (auto& e : kEdges)
      for (int j = 0; j < 3; ++j)
        if (segment_segment_distance(tp[e[0]], tp[e[1]], q[j], q[(j + 1) % 3]) < tol) return false;
  }
  return true;
}

struct Ctx {
  const Complex3& c;
  const PreparedSurface& s;
};

Vec3 key_position(const PointKey& k, const Ctx& x) {
  switch (k.type) {
    case PointKey::SurfaceVertex:
      return x.s.at(k.a, k.ka);
    case PointKey::EdgeFace: {
      const Vec3 pa = x.s.at(k.a, k.ka), pb = x.s.at(k.b, k.kb);
      const Plane pl = face_plane(x.c, k.c);
      const double sa = pl.eval(pa), sb = pl.eval(pb);
      return pa + (pb - pa) * (sa / (sa - sb));
    }
    case PointKey::TetEdge: {
      const auto q = x.s.tri_points(k.a, k.ka);
      const Vec3 n = cross(q[1] - q[0], q[2] - q[0]);
      const Seg& e = x.c.edges()[k.c];
      const Vec3 e0 = x.c.vertices()[e[0]], e1 = x.c.vertices()[e[1]];
      const double s0 = dot(n, e0 - q[0]), s1 = dot(n, e1 - q[0]);
      return e0 + (e1 - e0) * (s0 / (s0 - s1));
    }
  }
  return {};
}

// Polygon vertex during clipping. tag >= 0: the outgoing edge lies on surface
// edge `tag` of the image triangle; tag < 0: on complex face -(tag+1).
struct PV {
  PointKey key;
  Vec3 pos;
  int tag;
};

int shared_edge(const Complex3& c, int f, int g) {
  const Tri &a = c.faces()[f], &b = c.faces()[g];
  int v[2], n = 0;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end() && n < 2) v[n++] = x;
  return c.find_edge(v[0], v[1]);
}

struct LocalMesh {
  std::map<PointKey, int> ids;
  std::vector<PointKey> keys;
  std::vector<Vec3> pos;
  std::vector<std::vector<int>> polys;
  std::vector<std::vector<int>> tags;

  int id(const PointKey& k, const Vec3& p) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(k);
      pos.push_back(p);
    }
    return it->second;
  }
};

void clip_image(const Ctx& x, int t, const Image& im, std::map<PointKey, Vec3>& cache, LocalMesh& mesh) {
  auto position = [&](const PointKey& k) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const Vec3 p = key_position(k, x);
    cache.emplace(k, p);
    return p;
  };
  const Tri& tv = x.s.tris[im.tri];
  const auto& uw = x.s.unwrap[im.tri];
  std::vector<PV> poly;
  for (int j = 0; j < 3; ++j) {
    PointKey k;
    k.type = PointKey::SurfaceVertex;
    k.a = tv[j];
    k.ka = add(im.k, uw[j]);
    poly.push_back({k, position(k), j});
  }
  for (int i = 0; i < 4 && poly.size() >= 3; ++i) {
    const int f = x.c.tet_faces(t)[i];
    const Plane pl = face_plane(x.c, f);
    const bool positive = pl.eval(x.c.vertices()[x.c.tets()[t][i]]) > 0;
    auto inside = [&](const Vec3& p) {
      const double v = pl.eval(p);
      return positive ? v >= 0 : v < 0;
    };
    auto crossing = [&](const PV& p, const PV& q) {
      PointKey k;
      if (p.tag >= 0) {
        const int j = p.tag;
        std::pair<int, Shift> a{tv[j], add(im.k, uw[j])}, b{tv[(j + 1) % 3], add(im.k, uw[(j + 1) % 3])};
        if (b < a) std::swap(a, b);
        k.type = PointKey::EdgeFace;
        k.a = a.first;
        k.ka = a.second;
        k.b = b.first;
        k.kb = b.second;
        k.c = f;
      } else {
        k.type = PointKey::TetEdge;
        k.a = im.tri;
        k.ka = im.k;
        k.c = shared_edge(x.c, -p.tag - 1, f);
      }
      (void)q;
      return k;
    };
    std::vector<char> in(poly.size());
    for (std::size_t j = 0; j < poly.size(); ++j) in[j] = inside(poly[j].pos);
    std::vector<PV> out;
    const std::size_t n = poly.size();
    for (std::size_t j = 0; j < n; ++j) {
      const PV& p = poly[j];
      const PV& q = poly[(j + 1) % n];
      const bool pin = in[j], qin = in[(j + 1) % n];
      if (pin && qin) {
        out.push_back(q);
      } else if (pin) {
        const PointKey k = crossing(p, q);
        out.push_back({k, position(k), -(f + 1)});
      } else if (qin) {
        const PointKey k = crossing(p, q);
        out.push_back({k, position(k), p.tag});
        out.push_back(q);
      }
    }
    poly = std::move(out);
  }
  if (poly.size() < 3) return;
  std::vector<int> ids, tags;
  for (auto& v : poly) {
    ids.push_back(mesh.id(v.key, v.pos));
    tags.push_back(v.tag);
  }
  mesh.polys.push_back(std::move(ids));
  mesh.tags.push_back(std::move(tags));
}

struct RawArc {
  int comp;  // local component index
  int loop = 0;
  Arc arc;
  std::tuple<int, int, PointKey, PointKey> key;
};

struct TetResult {
  std::vector<DiskComponent> comps;
  std::vector<RawArc> arcs;
  std::vector<PointKey> edge_points;  // normalized
};

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

double polygon_area_vec(const std::vector<Vec3>& p, Vec3& normal) {
  Vec3 n{};
  for (std::size_t i = 1; i + 1 < p.size(); ++i) n += cross(p[i] - p[0], p[i + 1] - p[0]);
  normal = n * 0.5;
  return 0.5 * norm(n);
}

TetResult process_tet(const Ctx& x, int t, const std::vector<Image>& images, const std::vector<int>& cand) {
  TetResult res;
  LocalMesh mesh;
  std::map<PointKey, Vec3> cache;
  for (int ii : cand) clip_image(x, t, images[ii], cache, mesh);
  if (mesh.polys.empty()) return res;

  const int np = static_cast<int>(mesh.polys.size());
  std::map<std::pair<int, int>, std::vector<int>> edge_polys;
  for (int k = 0; k < np; ++k) {
    const auto& p = mesh.polys[k];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const int a = p[j], b = p[(j + 1) % p.size()];
      edge_polys[{std::min(a, b), std::max(a, b)}].push_back(k);
    }
  }
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto& [e, ps] : edge_polys) {
    if (ps.size() > 2) throw Error(ErrorKind::NonManifoldSurface, "clipped edge in more than two polygons");
    if (ps.size() == 2) parent[find_root(parent, ps[0])] = find_root(parent, ps[1]);
  }
  std::map<int, int> comp_of_root;
  std::vector<int> comp(np);
  for (int k = 0; k < np; ++k) {
    const int r = find_root(parent, k);
    auto it = comp_of_root.emplace(r, static_cast<int>(comp_of_root.size())).first;
    comp[k] = it->second;
  }
  const int nc = static_cast<int>(comp_of_root.size());
  res.comps.resize(nc);
  std::vector<std::set<int>> cverts(nc);
  std::vector<std::set<std::pair<int, int>>> cedges(nc);
  // boundary successor: from -> (to, tag)
  std::vector<std::map<int, std::pair<int, int>>> succ(nc);
  for (int k = 0; k < np; ++k) {
    DiskComponent& d = res.comps[comp[k]];
    const auto& p = mesh.polys[k];
    std::vector<Vec3> pts;
    for (int v : p) {
      pts.push_back(mesh.pos[v]);
      cverts[comp[k]].insert(v);
    }
    Vec3 n;
    d.area += polygon_area_vec(pts, n);
    d.normal_sum += n;
    d.polygons.push_back(std::move(pts));
    ++d.faces;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const int a = p[j], b = p[(j + 1) % p.size()];
      const std::pair<int, int> e{std::min(a, b), std::max(a, b)};
      cedges[comp[k]].insert(e);
      if (edge_polys[e].size() == 1) {
        if (!succ[comp[k]].emplace(a, std::make_pair(b, mesh.tags[k][j])).second)
          throw Error(ErrorKind::NonManifoldSurface, "surface touches itself inside a tet");
      }
    }
  }

  for (int ci = 0; ci < nc; ++ci) {
    DiskComponent& d = res.comps[ci];
    d.tet = t;
    d.vertices = static_cast<int>(cverts[ci].size());
    d.edges = static_cast<int>(cedges[ci].size());
    d.euler_char = d.vertices - d.edges + d.faces;
    auto& sc = succ[ci];
    std::set<int> seen;
    for (auto& [start, nx] : sc) {
      if (seen.count(start)) continue;
      std::vector<BoundaryPoint> loop;
      int cur = start;
      while (!seen.count(cur)) {
        seen.insert(cur);
        auto it = sc.find(cur);
        if (it == sc.end()) throw Error(ErrorKind::NonManifoldSurface, "open boundary chain inside a tet");
        BoundaryPoint bp;
        bp.key = mesh.keys[cur];
        bp.pos = mesh.pos[cur];
        bp.edge = bp.key.type == PointKey::TetEdge ? bp.key.c : -1;
        bp.face = it->second.second < 0 ? -it->second.second - 1 : -1;
        if (it->second.second >= 0) {
          d.touches_surface_boundary = true;
        }
        loop.push_back(bp);
        cur = it->second.first;
      }
      if (cur != start) throw Error(ErrorKind::NonManifoldSurface, "boundary chain does not close");
      d.loops.push_back(std::move(loop));
    }
  }

  // arcs
  for (int ci = 0; ci < nc; ++ci) {
    DiskComponent& d = res.comps[ci];
    for (std::size_t li = 0; li < d.loops.size(); ++li) {
      const auto& loop = d.loops[li];
      std::vector<std::size_t> te;
      for (std::size_t j = 0; j < loop.size(); ++j)
        if (loop[j].edge >= 0) te.push_back(j);
      if (te.empty()) {
        RawArc ra;
        ra.comp = ci;
        ra.loop = static_cast<int>(li);
        int face = loop[0].face;
        for (auto& p : loop)
          if (p.face != face) face = -1;
        ra.arc.face = face;
        PointKey mn = normalize_key(loop[0].key, x.c);
        for (auto& p : loop) {
          ra.arc.polyline.push_back(p.pos);
          mn = std::min(mn, normalize_key(p.key, x.c));
        }
        ra.key = {face >= 0 ? x.c.face_class(face) : -1, 1, mn, PointKey{}};
        if (face < 0) ra.key = {-1 - t, 2 + static_cast<int>(li), mn, PointKey{}};
        res.arcs.push_back(std::move(ra));
        continue;
      }
      for (std::size_t m = 0; m < te.size(); ++m) {
        const std::size_t s = te[m], e = te[(m + 1) % te.size()];
        RawArc ra;
        ra.comp = ci;
        ra.loop = static_cast<int>(li);
        int face = loop[s].face;
        std::size_t j = s;
        ra.arc.polyline.push_back(loop[j].pos);
        do {
          if (loop[j].face != face) face = -1;
          j = (j + 1) % loop.size();
          ra.arc.polyline.push_back(loop[j].pos);
        } while (j != e);
        ra.arc.face = face;
        ra.arc.ends = {loop[s], loop[e]};
        ra.arc.end_edges = {loop[s].edge, loop[e].edge};
        PointKey k0 = normalize_key(loop[s].key, x.c), k1 = normalize_key(loop[e].key, x.c);
        if (k1 < k0) std::swap(k0, k1);
        ra.key = {face >= 0 ? x.c.face_class(face) : -1 - t, face >= 0 ? 0 : 3, k0, k1};
        res.arcs.push_back(std::move(ra));
      }
      for (std::size_t j : te) res.edge_points.push_back(normalize_key(loop[j].key, x.c));
    }
  }
  return res;
}

}  // namespace

PointKey normalize_key(const PointKey& k, const Complex3& c) {
  PointKey n = k;
  if (k.type == PointKey::EdgeFace) {
    const Shift& T = c.face_shift(k.c);
    n.ka = sub(k.ka, T);
    n.kb = sub(k.kb, T);
    n.c = c.face_class(k.c);
  } else if (k.type == PointKey::TetEdge) {
    n.ka = sub(k.ka, c.edge_shift(k.c));
    n.c = c.edge_class(k.c);
  }
  return n;
}

IntersectionPattern intersect(const SurfaceMesh& surface, const Complex3& c, const IntersectOptions& opt) {
  const SurfaceTopology topo = surface_topology(surface);
  if (c.ambient().is_torus() && topo.boundary_edges > 0)
    throw Error(ErrorKind::NonManifoldSurface, "surface in a closed ambient must have no boundary");
  IntersectionPattern pat;
  pat.seed = opt.seed;
  pat.lambda = mesh_size(c);
  pat.tolerance = opt.rel_tol * pat.lambda;
  pat.closed_ambient = c.ambient().is_torus();

  Box3 domain;
  for (const Vec3& v : c.vertices()) domain.expand(v);
  domain.inflate(pat.tolerance + 1e-12);

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Vec3 offset{};
  PreparedSurface prep;
  std::vector<Image> images;
  std::vector<std::vector<int>> cand(c.tets().size());
  double cell = pat.lambda;
  for (int attempt = 0;; ++attempt) {
    prep = prepare(surface, c.ambient(), offset);
    images = build_images(prep, domain);
    ImageGrid grid(images, domain, cell);
    std::vector<char> ok(c.tets().size(), 1);
    parallel_for(c.tets().size(), [&](std::size_t t) {
      Box3 b = tet_box(c, static_cast<int>(t));
      b.inflate(pat.tolerance);
      cand[t] = grid.query(b);
      ok[t] = tet_in_general_position(c, static_cast<int>(t), prep, images, cand[t], pat.tolerance);
    });
    if (std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; })) {
      pat.perturbation = offset;
      pat.perturbation_magnitude = norm(offset);
      pat.perturbation_attempts = attempt;
      break;
    }
    if (attempt >= opt.max_attempts)
      throw Error(ErrorKind::PerturbationFailed,
                  "no general position after " + std::to_string(opt.max_attempts) + " translations");
    Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
    offset = normalized(dir) * (opt.perturb_rel * pat.lambda);
  }

  pat.surface = surface;
  for (auto& v : pat.surface.vertices) v += offset;
  pat.surface_area = surface_area(pat.surface);

  const Ctx ctx{c, prep};
  std::vector<TetResult> results(c.tets().size());
  parallel_for(c.tets().size(), [&](std::size_t t) {
    if (!cand[t].empty()) results[t] = process_tet(ctx, static_cast<int>(t), images, cand[t]);
  });

  pat.tet_components.assign(c.tets().size(), {});
  std::map<std::tuple<int, int, PointKey, PointKey>, int> arc_ids;
  std::set<PointKey> edge_points;
  for (std::size_t t = 0; t < results.size(); ++t) {
    TetResult& r = results[t];
    const int base = static_cast<int>(pat.components.size());
    for (auto& d : r.comps) {
      d.id = static_cast<int>(pat.components.size());
      d.loop_arcs.assign(d.loops.size(), {});
      pat.tet_components[t].push_back(d.id);
      pat.clipped_area += d.area;
      pat.euler_sum += d.euler_char;
      pat.components.push_back(std::move(d));
    }
    for (auto& ra : r.arcs) {
      const int cid = base + ra.comp;
      auto [it, fresh] = arc_ids.emplace(ra.key, static_cast<int>(pat.arcs.size()));
      if (fresh) pat.arcs.push_back(ra.arc);
      pat.arcs[it->second].components.push_back(cid);
      pat.components[cid].loop_arcs[ra.loop].push_back(it->second);
    }
    for (auto& k : r.edge_points) edge_points.insert(k);
  }
  for (auto& a : pat.arcs)
    if (!(a.end_edges[0] < 0 && a.face >= 0)) ++pat.glued_arcs;
  pat.edge_points = static_cast<int>(edge_points.size());

  classify_arcs(pat);
  classify_components(pat, c);
  return pat;
}

void classify_arcs(IntersectionPattern& p) {
  for (auto& a : p.arcs) {
    if (a.face < 0) {
      a.cls = ArcClass::OpenArc;
    } else if (a.end_edges[0] < 0 && a.end_edges[1] < 0) {
      a.cls = ArcClass::ClosedCurve;
    } else if (a.end_edges[0] == a.end_edges[1]) {
      a.cls = ArcClass::BentCurve;
    } else {
      a.cls = ArcClass::NormalArc;
    }
  }
}

void classify_components(IntersectionPattern& p, const Complex3& c) {
  for (auto& d : p.components) {
    d.ngon = 0;
    d.vertex_side = {0, 0, 0, 0};
    if (d.euler_char != 1 || d.loops.size() != 1) {
      d.cls = DiskClass::NonDisk;
      continue;
    }
    bool all_normal = !d.loop_arcs[0].empty();
    for (int a : d.loop_arcs[0]) all_normal &= p.arcs[a].cls == ArcClass::NormalArc;
    if (!all_normal || d.touches_surface_boundary) {
      d.cls = DiskClass::NonNormal;
      continue;
    }
    d.ngon = static_cast<int>(d.loop_arcs[0].size());
    std::array<int, 6> crossings{};
    const auto& te = c.tet_edges(d.tet);
    for (auto& bp : d.loops[0])
      if (bp.edge >= 0)
        for (int k = 0; k < 6; ++k)
          if (te[k] == bp.edge) ++crossings[k];
    std::array<int, 4> side{-1, -1, -1, -1};
    side[0] = 0;
    for (int pass = 0; pass < 4; ++pass)
      for (int k = 0; k < 6; ++k) {
        const int i = kEdges[k][0], j = kEdges[k][1];
        if (side[i] >= 0 && side[j] < 0) side[j] = side[i] ^ (crossings[k] & 1);
        if (side[j] >= 0 && side[i] < 0) side[i] = side[j] ^ (crossings[k] & 1);
      }
    d.vertex_side = side;
    const int ones = side[0] + side[1] + side[2] + side[3];
    const int smaller = std::min(ones, 4 - ones);
    if (d.ngon == 3 && smaller == 1) {
      d.cls = DiskClass::Elementary3;
    } else if (d.ngon == 4 && smaller == 2) {
      d.cls = DiskClass::Elementary4;
    } else {
      d.cls = DiskClass::NormalNGon;
    }
  }
}

namespace {

void common_violations(const IntersectionPattern& p, QuasiNormalReport& r) {
  for (const auto& d : p.components) {
    if (d.cls == DiskClass::NonDisk) {
      r.witnesses.push_back({"NonDisk", d.id, -1,
                             "chi=" + std::to_string(d.euler_char) + " loops=" + std::to_string(d.loops.size())});
    } else if (d.cls == DiskClass::NormalNGon) {
      r.witnesses.push_back({"NonElementary", d.id, -1, std::to_string(d.ngon) + "-gon"});
    }
  }
  for (std::size_t a = 0; a < p.arcs.size(); ++a)
    if (p.arcs[a].cls == ArcClass::OpenArc)
      r.witnesses.push_back({"OpenArc", p.arcs[a].components.front(), static_cast<int>(a), "surface boundary inside a tet"});
}

}  // namespace

QuasiNormalReport is_quasi_normal(const IntersectionPattern& p) {
  QuasiNormalReport r;
  common_violations(p, r);
  for (std::size_t a = 0; a < p.arcs.size(); ++a)
    if (p.arcs[a].cls == ArcClass::ClosedCurve)
      r.witnesses.push_back({"ClosedCurve", p.arcs[a].components.front(), static_cast<int>(a),
                             "face " + std::to_string(p.arcs[a].face)});
  r.holds = r.witnesses.empty();
  return r;
}

QuasiNormalReport is_internally_quasi_normal(const IntersectionPattern& p, const Complex3& c) {
  QuasiNormalReport r;
  common_violations(p, r);
  for (std::size_t a = 0; a < p.arcs.size(); ++a) {
    const Arc& arc = p.arcs[a];
    if (arc.cls == ArcClass::ClosedCurve) {
      bool peripheral = false;
      for (int cid : arc.components) peripheral |= c.tet_label(p.components[cid].tet) == TetLabel::Peripheral;
      if (!(c.face_label(arc.face) == FaceLabel::Boundary && peripheral))
        r.witnesses.push_back({"ClosedCurve", arc.components.front(), static_cast<int>(a),
                               std::string("face label ") + to_string(c.face_label(arc.face))});
    } else if (arc.cls == ArcClass::BentCurve && c.face_label(arc.face) == FaceLabel::PeripheralOnly &&
               c.edge_on_boundary(arc.end_edges[0])) {
      r.witnesses.push_back({"PeripheralBentCurve", arc.components.front(), static_cast<int>(a),
                             "endpoints on boundary edge " + std::to_string(arc.end_edges[0])});
    }
  }
  r.holds = r.witnesses.empty();
  return r;
}

namespace {

struct Tri2 {
  double x[3], y[3];
  double lo[2], hi[2];
};

double orient2(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool strictly_inside(const Tri2& t, double px, double py, double eps) {
  const double s = orient2(t.x[0], t.y[0], t.x[1], t.y[1], t.x[2], t.y[2]);
  const double sg = s > 0 ? 1.0 : -1.0;
  return sg * orient2(t.x[0], t.y[0], t.x[1], t.y[1], px, py) > eps &&
         sg * orient2(t.x[1], t.y[1], t.x[2], t.y[2], px, py) > eps &&
         sg * orient2(t.x[2], t.y[2], t.x[0], t.y[0], px, py) > eps;
}

// Orthogonal projection onto the plane is injective on the disk: no fold in
// orientation and no sample of one triangle inside another.
bool is_graph_over(const DiskComponent& d, const Vec3& normal, int samples) {
  const Vec3 n = normalized(normal);
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = normalized(cross(helper, n)), v = cross(n, u);
  std::vector<Tri2> tris;
  double scale = 0.0;
  int pos = 0, neg = 0;
  for (const auto& poly : d.polygons)
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      Tri2 t;
      const Vec3* p[3] = {&poly[0], &poly[i], &poly[i + 1]};
      for (int k = 0; k < 3; ++k) {
        t.x[k] = dot(*p[k], u);
        t.y[k] = dot(*p[k], v);
      }
      t.lo[0] = std::min({t.x[0], t.x[1], t.x[2]});
      t.hi[0] = std::max({t.x[0], t.x[1], t.x[2]});
      t.lo[1] = std::min({t.y[0], t.y[1], t.y[2]});
      t.hi[1] = std::max({t.y[0], t.y[1], t.y[2]});
      scale = std::max({scale, t.hi[0] - t.lo[0], t.hi[1] - t.lo[1]});
      tris.push_back(t);
    }
  const double area_eps = 1e-12 * scale * scale;
  for (auto& t : tris) {
    const double s = orient2(t.x[0], t.y[0], t.x[1], t.y[1], t.x[2], t.y[2]);
    if (s > area_eps) ++pos;
    if (s < -area_eps) ++neg;
  }
  if (pos > 0 && neg > 0) return false;
  // barycentric sample lattice with about `samples` interior points
  int m = 1;
  while ((m - 1) * (m - 2) / 2 < samples) ++m;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const Tri2& t = tris[i];
    if (std::abs(orient2(t.x[0], t.y[0], t.x[1], t.y[1], t.x[2], t.y[2])) <= area_eps) continue;
    for (int a = 1; a < m; ++a)
      for (int b = 1; a + b < m; ++b) {
        const double wa = static_cast<double>(a) / m, wb = static_cast<double>(b) / m, wc = 1 - wa - wb;
        const double px = wa * t.x[0] + wb * t.x[1] + wc * t.x[2];
        const double py = wa * t.y[0] + wb * t.y[1] + wc * t.y[2];
        for (std::size_t j = 0; j < tris.size(); ++j) {
          if (j == i) continue;
          const Tri2& o = tris[j];
          if (px < o.lo[0] || px > o.hi[0] || py < o.lo[1] || py > o.hi[1]) continue;
          if (std::abs(orient2(o.x[0], o.y[0], o.x[1], o.y[1], o.x[2], o.y[2])) <= area_eps) continue;
          if (strictly_inside(o, px, py, area_eps)) return false;
        }
      }
  }
  return true;
}

}  // namespace

TamenessReport disk_tameness(const DiskComponent& d, const Complex3& c, int samples) {
  TamenessReport r;
  r.component = d.id;
  const auto pts = c.tet_points(d.tet);
  for (int i = 0; i < 4; ++i) {
    const int f = c.tet_faces(d.tet)[i];
    const Vec3 &a = pts[(i + 1) % 4], &b = pts[(i + 2) % 4], &e = pts[(i + 3) % 4];
    if (!is_graph_over(d, cross(b - a, e - a), samples)) continue;
    r.graph_faces.push_back(f);
    if (r.face < 0) r.face = f;
  }
  r.is_graph = !r.graph_faces.empty();
  const auto ep = d.edge_points();
  const std::size_t n = ep.size();
  if (n > 3) {
    for (std::size_t k = 0; k < n && !r.has_corner; ++k) {
      const Seg& e1 = c.edges()[ep[k].edge];
      const Seg& e2 = c.edges()[ep[(k + 1) % n].edge];
      const Seg& e3 = c.edges()[ep[(k + 2) % n].edge];
      if (ep[k].edge == ep[(k + 1) % n].edge || ep[(k + 1) % n].edge == ep[(k + 2) % n].edge ||
          ep[k].edge == ep[(k + 2) % n].edge)
        continue;
      for (int v : e1)
        if ((e2[0] == v || e2[1] == v) && (e3[0] == v || e3[1] == v)) r.has_corner = true;
    }
  }
  return r;
}

std::vector<TamenessReport> check_tameness(const IntersectionPattern& p, const Complex3& c, int samples) {
  std::vector<int> ids;
  for (auto& d : p.components)
    if (d.cls == DiskClass::NonNormal) ids.push_back(d.id);
  std::vector<TamenessReport> out(ids.size());
  parallel_for(ids.size(), [&](std::size_t i) { out[i] = disk_tameness(p.components[ids[i]], c, samples); });
  return out;
}

std::vector<Cylinder> find_cylinders(const IntersectionPattern& p, const Complex3& c, int samples) {
  std::map<int, TamenessReport> tame;
  for (auto& r : check_tameness(p, c, samples)) tame[r.component] = r;
  // bent arcs grouped by face class and endpoint pair
  std::map<std::tuple<int, PointKey, PointKey>, std::vector<std::pair<int, int>>> groups;
  for (std::size_t a = 0; a < p.arcs.size(); ++a) {
    const Arc& arc = p.arcs[a];
    if (arc.cls != ArcClass::BentCurve) continue;
    PointKey k0 = normalize_key(arc.ends[0].key, c), k1 = normalize_key(arc.ends[1].key, c);
    if (k1 < k0) std::swap(k0, k1);
    for (int cid : arc.components) groups[{c.face_class(arc.face), k0, k1}].push_back({cid, static_cast<int>(a)});
  }
  std::vector<Cylinder> out;
  std::set<std::pair<int, int>> seen;
  for (auto& [key, members] : groups) {
    const int fclass = std::get<0>(key);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const int d1 = members[i].first, d2 = members[j].first;
        if (d1 == d2 || p.components[d1].tet == p.components[d2].tet) continue;
        if (!tame.count(d1) || !tame.count(d2)) continue;
        auto over = [&](int d) {
          for (int f : tame[d].graph_faces)
            if (c.face_class(f) == fclass) return true;
          return false;
        };
        if (!over(d1) || !over(d2)) continue;
        const std::pair<int, int> pr{std::min(d1, d2), std::max(d1, d2)};
        if (!seen.insert(pr).second) continue;
        Cylinder cyl;
        cyl.disks = {pr.first, pr.second};
        cyl.arcs = {members[i].second, members[j].second};
        cyl.face = p.arcs[members[i].second].face;
        out.push_back(cyl);
      }
  }
  return out;
}

}  // namespace qnk
