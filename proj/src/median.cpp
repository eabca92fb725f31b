#include "qnk/median.hpp"

#include <algorithm>
#include <cmath>

#include "qnk/error.hpp"
#include "qnk/parallel.hpp"
#include "qnk/quality.hpp"

namespace qnk {

namespace {

constexpr int kEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr int kOpposite[6] = {5, 4, 3, 2, 1, 0};

int local_edge(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kEdges[k][0] == i && kEdges[k][1] == j) return k;
  return -1;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(a, b); }

}  // namespace

const char* to_string(ShapeClass s) {
  switch (s) {
    case ShapeClass::Regular: return "Regular";
    case ShapeClass::AlmostRegular: return "AlmostRegular";
    case ShapeClass::General: return "General";
  }
  return "?";
}

TetShapeClass classify_tet_shape(const std::array<Vec3, 4>& p, double rel_tol) {
  TetShapeClass s;
  s.rel_tolerance = rel_tol;
  double diam = 0.0;
  for (int k = 0; k < 6; ++k) {
    s.edge_lengths[k] = distance(p[kEdges[k][0]], p[kEdges[k][1]]);
    diam = std::max(diam, s.edge_lengths[k]);
  }
  if (!(std::abs(signed_volume(p[0], p[1], p[2], p[3])) > 1e-12 * diam * diam * diam))
    throw Error(ErrorKind::DegenerateSimplex, "cannot classify a degenerate tet");
  const auto& L = s.edge_lengths;
  const double shortest = *std::min_element(L.begin(), L.end());
  if (std::all_of(L.begin(), L.end(), [&](double l) { return close_rel(l, shortest, rel_tol); })) {
    s.cls = ShapeClass::Regular;
    return s;
  }
  int longs = 0, shorts = 0, long_edge = -1;
  for (int k = 0; k < 6; ++k) {
    if (close_rel(L[k], shortest, rel_tol)) {
      ++shorts;
    } else if (close_rel(L[k], std::sqrt(2.0) * shortest, rel_tol)) {
      ++longs;
      long_edge = k;
    }
  }
  if (shorts == 5 && longs == 1) {
    s.cls = ShapeClass::AlmostRegular;
    s.long_edge = long_edge;
  }
  return s;
}

std::array<Triangle3, 4> med_triangle(const Triangle3& t) {
  const double diam = std::max({distance(t[0], t[1]), distance(t[1], t[2]), distance(t[0], t[2])});
  if (!(triangle_area(t[0], t[1], t[2]) > 1e-12 * diam * diam))
    throw Error(ErrorKind::DegenerateSimplex, "degenerate triangle");
  const Vec3 m01 = midpoint(t[0], t[1]), m12 = midpoint(t[1], t[2]), m02 = midpoint(t[0], t[2]);
  return {{{t[0], m01, m02}, {m01, t[1], m12}, {m02, m12, t[2]}, {m12, m02, m01}}};
}

MedTetLocal med_tet_local(const std::array<Vec3, 4>& p, const TetShapeClass& shape,
                          const std::array<int, 4>& ids) {
  MedTetLocal out;
  Vec3 m[6];
  for (int k = 0; k < 6; ++k) m[k] = midpoint(p[kEdges[k][0]], p[kEdges[k][1]]);

  // Diagonals join midpoints of opposite edges: (01,23), (02,13), (03,12).
  int diag = -1;
  if (shape.cls == ShapeClass::AlmostRegular) {
    diag = std::min(shape.long_edge, kOpposite[shape.long_edge]);
  } else {
    double best_len = 0.0;
    std::array<int, 2> best_key{};
    for (int k = 0; k < 3; ++k) {
      const double len = distance(m[k], m[kOpposite[k]]);
      std::array<int, 2> key{std::numeric_limits<int>::max(), 0};
      for (int e : {k, kOpposite[k]}) {
        std::array<int, 2> pr{ids[kEdges[e][0]], ids[kEdges[e][1]]};
        if (pr[0] > pr[1]) std::swap(pr[0], pr[1]);
        key = std::min(key, pr);
      }
      const bool tie = diag >= 0 && std::abs(len - best_len) <= 1e-9 * std::max(len, best_len);
      if (diag < 0 || (!tie && len < best_len) || (tie && key < best_key)) {
        diag = k;
        best_len = len;
        best_key = key;
      }
    }
  }
  out.diagonal_edges = {diag, kOpposite[diag]};

  int c = 0;
  for (int i = 0; i < 4; ++i) {
    Tet t{i, 0, 0, 0};
    int n = 1;
    for (int j = 0; j < 4; ++j)
      if (j != i) t[n++] = 4 + local_edge(i, j);
    out.children[c] = t;
    out.roles[c++] = ChildRole::Peripheral;
  }
  // The other four midpoints form two opposite pairs; alternate them to get the
  // equator cycle around the diagonal.
  int pairs[2][2], np = 0;
  for (int k = 0; k < 3; ++k)
    if (k != diag) {
      pairs[np][0] = k;
      pairs[np][1] = kOpposite[k];
      ++np;
    }
  const int ring[4] = {pairs[0][0], pairs[1][0], pairs[0][1], pairs[1][1]};
  for (int k = 0; k < 4; ++k) {
    out.children[c] = {4 + diag, 4 + kOpposite[diag], 4 + ring[k], 4 + ring[(k + 1) % 4]};
    out.roles[c++] = ChildRole::Internal;
  }

  auto pt = [&](int i) { return i < 4 ? p[i] : m[i - 4]; };
  for (auto& t : out.children)
    if (signed_volume(pt(t[0]), pt(t[1]), pt(t[2]), pt(t[3])) < 0) std::swap(t[2], t[3]);
  return out;
}

MedTetResult med_tet(const std::array<Vec3, 4>& p, const TetShapeClass& shape) {
  MedTetResult r;
  const MedTetLocal loc = med_tet_local(p, shape);
  Vec3 pts[10];
  for (int i = 0; i < 4; ++i) pts[i] = p[i];
  for (int k = 0; k < 6; ++k) pts[4 + k] = midpoint(p[kEdges[k][0]], p[kEdges[k][1]]);
  r.record.parent = 0;
  r.record.shape = shape.cls;
  for (int k = 0; k < 6; ++k) r.record.new_vertices[k] = 4 + k;
  r.record.diagonal_edges = loc.diagonal_edges;
  r.record.octahedron_diagonal = {4 + loc.diagonal_edges[0], 4 + loc.diagonal_edges[1]};
  for (int c = 0; c < 8; ++c) {
    r.record.children[c] = c;
    r.record.roles[c] = loc.roles[c];
    for (int i = 0; i < 4; ++i) r.children[c][i] = pts[loc.children[c][i]];
  }
  return r;
}

MedResult med_subdivide(const Complex3& c, double rel_tol) {
  const int nv = static_cast<int>(c.vertices().size());
  std::vector<Vec3> verts = c.vertices();
  verts.reserve(nv + c.edges().size());
  for (const Seg& e : c.edges()) verts.push_back(midpoint(c.vertices()[e[0]], c.vertices()[e[1]]));

  const std::size_t nt = c.tets().size();
  std::vector<Tet> tets(nt * 8);
  std::vector<SubdivisionRecord> records(nt);
  parallel_for(nt, [&](std::size_t ti) {
    const int t = static_cast<int>(ti);
    const auto p = c.tet_points(t);
    const TetShapeClass shape = classify_tet_shape(p, rel_tol);
    const MedTetLocal loc = med_tet_local(p, shape, c.tets()[t]);
    int gid[10];
    for (int i = 0; i < 4; ++i) gid[i] = c.tets()[t][i];
    for (int k = 0; k < 6; ++k) {
      const int e = c.tet_edges(t)[k];
      const Seg& s = c.edges()[e];
      const Tet& v = c.tets()[t];
      const int a = v[kEdges[k][0]], b = v[kEdges[k][1]];
      if (!((s[0] == a && s[1] == b) || (s[0] == b && s[1] == a)))
        throw Error(ErrorKind::InconsistentMidpoint, "edge table mismatch in tet " + std::to_string(t));
      gid[4 + k] = nv + e;
    }
    SubdivisionRecord& rec = records[ti];
    rec.parent = t;
    rec.shape = shape.cls;
    rec.diagonal_edges = loc.diagonal_edges;
    for (int k = 0; k < 6; ++k) rec.new_vertices[k] = gid[4 + k];
    rec.octahedron_diagonal = {gid[4 + loc.diagonal_edges[0]], gid[4 + loc.diagonal_edges[1]]};
    for (int k = 0; k < 8; ++k) {
      const Tet& lt = loc.children[k];
      tets[ti * 8 + k] = {gid[lt[0]], gid[lt[1]], gid[lt[2]], gid[lt[3]]};
      rec.children[k] = static_cast<int>(ti * 8 + k);
      rec.roles[k] = loc.roles[k];
    }
  });
  return {build_complex(std::move(verts), std::move(tets), c.ambient()), std::move(records)};
}

std::vector<double> edge_ratio_set(const Complex3& c, double rel_tol) {
  std::vector<double> len;
  len.reserve(c.edges().size());
  for (const Seg& e : c.edges()) len.push_back(distance(c.vertices()[e[0]], c.vertices()[e[1]]));
  std::sort(len.begin(), len.end());
  std::vector<double> out;
  for (double l : len) {
    const double r = l / len.front();
    if (out.empty() || !close_rel(r, out.back(), rel_tol)) out.push_back(r);
  }
  return out;
}

std::vector<MedLevel> med_iterate(const Complex3& c, int n, bool keep_all) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "med_iterate needs n >= 1");
  std::vector<MedLevel> out;
  Complex3 cur = c;
  double prev_lambda = mesh_size(c);
  for (int level = 1; level <= n; ++level) {
    cur = med_subdivide(cur).complex;
    LevelSummary s;
    s.level = level;
    s.tets = cur.tets().size();
    s.lambda = mesh_size(cur);
    s.min_fatness = complex_fatness(cur);
    s.edge_ratio_set = edge_ratio_set(cur);
    s.lambda_halved = std::abs(s.lambda - prev_lambda / 2) <= 1e-12 * prev_lambda;
    s.edge_ratios_ok = true;
    for (double r : s.edge_ratio_set)
      if (!close_rel(r, 1.0, 1e-9) && !close_rel(r, std::sqrt(2.0), 1e-9)) s.edge_ratios_ok = false;
    prev_lambda = s.lambda;
    if (keep_all || level == n) {
      out.push_back({cur, std::move(s)});
    } else {
      out.push_back({Complex3{}, std::move(s)});
    }
  }
  return out;
}

}  // namespace qnk
