#include "qnk/complex.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "qnk/error.hpp"

namespace qnk {

AmbientModel AmbientModel::torus(const Vec3& period) {
  if (!(period.x > 0 && period.y > 0 && period.z > 0))
    throw Error(ErrorKind::InvalidInput, "torus period components must be positive");
  return {AmbientKind::FlatTorus3, period};
}

Vec3 AmbientModel::shift_vector(const Shift& s) const {
  return {s[0] * period.x, s[1] * period.y, s[2] * period.z};
}

const char* to_string(AmbientKind k) {
  return k == AmbientKind::FlatTorus3 ? "FlatTorus3" : "EuclideanRegion";
}
const char* to_string(FaceLabel l) {
  switch (l) {
    case FaceLabel::Internal: return "Internal";
    case FaceLabel::Boundary: return "Boundary";
    case FaceLabel::PeripheralOnly: return "PeripheralOnly";
  }
  return "?";
}
const char* to_string(TetLabel l) { return l == TetLabel::Internal ? "Internal" : "Peripheral"; }

Vec3 ambient_delta(const Vec3& p, const Vec3& q, const AmbientModel& ambient) {
  Vec3 d = q - p;
  if (!ambient.is_torus()) return d;
  Vec3 best = d;
  double best_n = dot(d, d);
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        Vec3 e = d + ambient.shift_vector({i, j, k});
        double n = dot(e, e);
        if (n < best_n) {
          best_n = n;
          best = e;
        }
      }
  return best;
}

double ambient_distance(const Vec3& p, const Vec3& q, const AmbientModel& ambient) {
  return norm(ambient_delta(p, q, ambient));
}

namespace {

constexpr int kTetEdgeLocal[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

double euclid_diameter(const std::array<Vec3, 4>& p) {
  double d = 0.0;
  for (auto& e : kTetEdgeLocal) d = std::max(d, distance(p[e[0]], p[e[1]]));
  return d;
}

// Lattice translate of a cell into its canonical position, quantized so that
// translated copies compare equal.
struct CellKey {
  std::vector<long long> coords;
  Shift shift{0, 0, 0};
};

CellKey torus_key(const std::vector<Vec3>& pts, const AmbientModel& amb) {
  Vec3 c{};
  for (auto& p : pts) c += p;
  c = c / static_cast<double>(pts.size());
  CellKey key;
  for (int k = 0; k < 3; ++k) key.shift[k] = static_cast<int>(std::floor(c[k] / amb.period[k] + 1e-9));
  const Vec3 t = amb.shift_vector(key.shift);
  std::vector<std::array<long long, 3>> q;
  for (auto& p : pts) {
    std::array<long long, 3> r{};
    for (int k = 0; k < 3; ++k) r[k] = std::llround((p[k] - t[k]) / amb.period[k] * 1e8);
    q.push_back(r);
  }
  std::sort(q.begin(), q.end());
  for (auto& r : q) key.coords.insert(key.coords.end(), r.begin(), r.end());
  return key;
}

template <std::size_t N>
void classify_cells(const std::vector<std::array<int, N>>& cells, const std::vector<Vec3>& verts,
                    const AmbientModel& amb, std::vector<int>& cls, std::vector<Shift>& shift,
                    int& n_classes) {
  cls.assign(cells.size(), 0);
  shift.assign(cells.size(), Shift{0, 0, 0});
  if (!amb.is_torus()) {
    for (std::size_t i = 0; i < cells.size(); ++i) cls[i] = static_cast<int>(i);
    n_classes = static_cast<int>(cells.size());
    return;
  }
  std::map<std::vector<long long>, int> ids;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<Vec3> pts;
    for (int v : cells[i]) pts.push_back(verts[v]);
    CellKey k = torus_key(pts, amb);
    auto [it, fresh] = ids.emplace(std::move(k.coords), static_cast<int>(ids.size()));
    cls[i] = it->second;
    shift[i] = k.shift;
  }
  n_classes = static_cast<int>(ids.size());
}

}  // namespace

Complex3 build_complex(std::vector<Vec3> vertices, std::vector<Tet> tets, AmbientModel ambient) {
  if (tets.empty()) throw Error(ErrorKind::InvalidInput, "complex needs at least one tet");
  if (ambient.is_torus()) ambient = AmbientModel::torus(ambient.period);
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t t = 0; t < tets.size(); ++t) {
    for (int v : tets[t])
      if (v < 0 || v >= nv)
        throw Error(ErrorKind::IndexOutOfRange,
                    "tet " + std::to_string(t) + " references vertex " + std::to_string(v));
    Tet s = tets[t];
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error(ErrorKind::DegenerateTet, "tet " + std::to_string(t) + " repeats a vertex");
    std::array<Vec3, 4> p{vertices[tets[t][0]], vertices[tets[t][1]], vertices[tets[t][2]],
                          vertices[tets[t][3]]};
    const double vol = signed_volume(p[0], p[1], p[2], p[3]);
    const double diam = euclid_diameter(p);
    if (!(std::abs(vol) >= 1e-12 * diam * diam * diam))
      throw Error(ErrorKind::DegenerateTet, "tet " + std::to_string(t) + " has volume " +
                                                std::to_string(vol));
    if (vol < 0) std::swap(tets[t][2], tets[t][3]);
  }

  Complex3 c;
  c.ambient_ = ambient;
  c.vertices_ = std::move(vertices);
  c.tets_ = std::move(tets);
  const std::size_t nt = c.tets_.size();

  {
    std::vector<Tet> sorted(nt);
    for (std::size_t t = 0; t < nt; ++t) {
      sorted[t] = c.tets_[t];
      std::sort(sorted[t].begin(), sorted[t].end());
    }
    std::vector<std::size_t> order(nt);
    for (std::size_t i = 0; i < nt; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sorted[a] < sorted[b]; });
    for (std::size_t i = 1; i < nt; ++i)
      if (sorted[order[i]] == sorted[order[i - 1]])
        throw Error(ErrorKind::DuplicateSimplex, "tets " + std::to_string(order[i - 1]) + " and " +
                                                     std::to_string(order[i]) + " coincide");
  }

  for (const Tet& t : c.tets_) {
    for (auto& e : kTetEdgeLocal) {
      Seg s{t[e[0]], t[e[1]]};
      if (s[0] > s[1]) std::swap(s[0], s[1]);
      c.edges_.push_back(s);
    }
    for (int i = 0; i < 4; ++i) {
      Tri f{};
      int k = 0;
      for (int j = 0; j < 4; ++j)
        if (j != i) f[k++] = t[j];
      std::sort(f.begin(), f.end());
      c.faces_.push_back(f);
    }
  }
  std::sort(c.edges_.begin(), c.edges_.end());
  c.edges_.erase(std::unique(c.edges_.begin(), c.edges_.end()), c.edges_.end());
  std::sort(c.faces_.begin(), c.faces_.end());
  c.faces_.erase(std::unique(c.faces_.begin(), c.faces_.end()), c.faces_.end());

  c.tet_edges_.resize(nt);
  c.tet_faces_.resize(nt);
  c.face_tets_.assign(c.faces_.size(), {-1, -1});
  for (std::size_t ti = 0; ti < nt; ++ti) {
    const Tet& t = c.tets_[ti];
    for (int e = 0; e < 6; ++e) c.tet_edges_[ti][e] = c.find_edge(t[kTetEdgeLocal[e][0]], t[kTetEdgeLocal[e][1]]);
    for (int i = 0; i < 4; ++i) {
      int a[3], k = 0;
      for (int j = 0; j < 4; ++j)
        if (j != i) a[k++] = t[j];
      const int f = c.find_face(a[0], a[1], a[2]);
      c.tet_faces_[ti][i] = f;
      auto& ft = c.face_tets_[f];
      if (ft[0] < 0) {
        ft[0] = static_cast<int>(ti);
      } else if (ft[1] < 0) {
        ft[1] = static_cast<int>(ti);
      } else {
        throw Error(ErrorKind::ImproperIntersection,
                    "face shared by more than two tets (tet " + std::to_string(ti) + ")");
      }
    }
  }

  // Two tets on one face must lie on opposite sides of it.
  for (std::size_t f = 0; f < c.faces_.size(); ++f) {
    const auto& ft = c.face_tets_[f];
    if (ft[1] < 0) continue;
    const Tri& fv = c.faces_[f];
    double side[2];
    for (int s = 0; s < 2; ++s) {
      int opp = -1;
      for (int v : c.tets_[ft[s]])
        if (v != fv[0] && v != fv[1] && v != fv[2]) opp = v;
      side[s] = signed_volume(c.vertices_[fv[0]], c.vertices_[fv[1]], c.vertices_[fv[2]],
                              c.vertices_[opp]);
    }
    if (side[0] * side[1] >= 0)
      throw Error(ErrorKind::ImproperIntersection,
                  "tets " + std::to_string(ft[0]) + " and " + std::to_string(ft[1]) +
                      " overlap across a shared face");
  }

  int n_edge_classes = 0, n_vertex_classes = 0;
  classify_cells(c.faces_, c.vertices_, ambient, c.face_class_, c.face_shift_, c.n_face_classes_);
  classify_cells(c.edges_, c.vertices_, ambient, c.edge_class_, c.edge_shift_, n_edge_classes);
  {
    std::vector<std::array<int, 1>> vs(c.vertices_.size());
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = {static_cast<int>(i)};
    classify_cells(vs, c.vertices_, ambient, c.vertex_class_, c.vertex_shift_, n_vertex_classes);
  }

  std::vector<int> class_tets(c.n_face_classes_, 0);
  for (std::size_t f = 0; f < c.faces_.size(); ++f)
    class_tets[c.face_class_[f]] += (c.face_tets_[f][1] >= 0) ? 2 : 1;
  for (int n : class_tets)
    if (n > 2) throw Error(ErrorKind::ImproperIntersection, "periodic face class in more than two tets");

  c.edge_boundary_.assign(c.edges_.size(), 0);
  c.vertex_boundary_.assign(c.vertices_.size(), 0);
  c.face_labels_.assign(c.faces_.size(), FaceLabel::Internal);
  for (std::size_t f = 0; f < c.faces_.size(); ++f) {
    if (class_tets[c.face_class_[f]] != 1) continue;
    c.face_labels_[f] = FaceLabel::Boundary;
    const Tri& v = c.faces_[f];
    for (int v0 : v) c.vertex_boundary_[v0] = 1;
    c.edge_boundary_[c.find_edge(v[0], v[1])] = 1;
    c.edge_boundary_[c.find_edge(v[0], v[2])] = 1;
    c.edge_boundary_[c.find_edge(v[1], v[2])] = 1;
  }
  for (std::size_t f = 0; f < c.faces_.size(); ++f) {
    if (c.face_labels_[f] == FaceLabel::Boundary) continue;
    const Tri& v = c.faces_[f];
    const bool meets = c.vertex_boundary_[v[0]] || c.vertex_boundary_[v[1]] || c.vertex_boundary_[v[2]];
    const bool rim = c.edge_boundary_[c.find_edge(v[0], v[1])] &&
                     c.edge_boundary_[c.find_edge(v[0], v[2])] &&
                     c.edge_boundary_[c.find_edge(v[1], v[2])];
    if (meets && !rim) c.face_labels_[f] = FaceLabel::PeripheralOnly;
  }
  c.tet_labels_.assign(nt, TetLabel::Internal);
  for (std::size_t t = 0; t < nt; ++t)
    for (int v : c.tets_[t])
      if (c.vertex_boundary_[v]) c.tet_labels_[t] = TetLabel::Peripheral;
  return c;
}

int Complex3::find_edge(int a, int b) const {
  Seg s{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), s);
  return (it != edges_.end() && *it == s) ? static_cast<int>(it - edges_.begin()) : -1;
}

int Complex3::find_face(int a, int b, int c) const {
  Tri s{a, b, c};
  std::sort(s.begin(), s.end());
  auto it = std::lower_bound(faces_.begin(), faces_.end(), s);
  return (it != faces_.end() && *it == s) ? static_cast<int>(it - faces_.begin()) : -1;
}

std::array<Vec3, 4> Complex3::tet_points(int t) const {
  const Tet& v = tets_[t];
  return {vertices_[v[0]], vertices_[v[1]], vertices_[v[2]], vertices_[v[3]]};
}

double tet_diameter(const Complex3& c, int t) {
  auto p = c.tet_points(t);
  double d = 0.0;
  for (auto& e : kTetEdgeLocal) d = std::max(d, ambient_distance(p[e[0]], p[e[1]], c.ambient()));
  return d;
}

double mesh_size(const Complex3& c) {
  double lam = 0.0;
  for (std::size_t t = 0; t < c.tets().size(); ++t) lam = std::max(lam, tet_diameter(c, static_cast<int>(t)));
  return lam;
}

Tet canonical_tet(const Tet& t, const std::vector<Vec3>& vertices) {
  Tet p = t;
  if (signed_volume(vertices[p[0]], vertices[p[1]], vertices[p[2]], vertices[p[3]]) < 0)
    std::swap(p[2], p[3]);
  static constexpr int kEven[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 0, 3, 2},
                                       {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 1, 3, 0},
                                       {2, 3, 0, 1}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}};
  Tet best = p;
  for (auto& perm : kEven) {
    Tet q{p[perm[0]], p[perm[1]], p[perm[2]], p[perm[3]]};
    best = std::min(best, q);
  }
  return best;
}

}  // namespace qnk
