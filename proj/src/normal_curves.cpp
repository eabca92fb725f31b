#include "qnk/normal_curves.hpp"

#include <functional>
#include <numeric>

#include "qnk/error.hpp"

namespace qnk {

namespace {

// Vertices of face f in increasing order.
std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> v{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != f) v[k++] = i;
  return v;
}

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  static constexpr int kId[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return kId[a][b];
}

int corner_count(const NormalCurveCounts& c, int f, int v) {
  const auto fv = face_vertices(f);
  for (int k = 0; k < 3; ++k)
    if (fv[k] == v) return c.corner[f][k];
  return 0;
}

// Edge weight of edge ab seen from face f.
int weight(const NormalCurveCounts& c, int f, int a, int b) { return corner_count(c, f, a) + corner_count(c, f, b); }

// The two faces containing edge ab are those opposite the other two vertices.
std::array<int, 2> faces_of_edge(int a, int b) {
  std::array<int, 2> r{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != a && i != b) r[k++] = i;
  return r;
}

}  // namespace

int NormalCurveCounts::length() const {
  int n = 0;
  for (auto& f : corner) n += f[0] + f[1] + f[2];
  return n;
}

bool satisfies_matching(const NormalCurveCounts& c) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      auto fs = faces_of_edge(a, b);
      if (weight(c, fs[0], a, b) != weight(c, fs[1], a, b)) return false;
    }
  return true;
}

int curve_components(const NormalCurveCounts& c) {
  // Points on edge ab (a < b) are numbered from a.
  std::array<int, 6> w{}, base{};
  int total = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const int e = edge_index(a, b);
      w[e] = weight(c, faces_of_edge(a, b)[0], a, b);
      base[e] = total;
      total += w[e];
    }
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto point = [&](int from, int to, int i) {
    // i-th point counted from vertex `from` on edge (from, to)
    const int e = edge_index(from, to);
    return base[e] + (from < to ? i : w[e] - 1 - i);
  };
  for (int f = 0; f < 4; ++f) {
    const auto fv = face_vertices(f);
    for (int k = 0; k < 3; ++k) {
      const int v = fv[k], p = fv[(k + 1) % 3], q = fv[(k + 2) % 3];
      // Corner-v arcs are the ones nearest v on both edges at v.
      for (int i = 0; i < c.corner[f][k]; ++i) parent[find(point(v, p, i))] = find(point(v, q, i));
    }
  }
  int comps = 0;
  for (int i = 0; i < total; ++i) comps += find(i) == i;
  return comps;
}

namespace {

template <class Visit>
void for_each_matching(int max_len, Visit&& visit) {
  NormalCurveCounts c;
  std::function<void(int, int)> rec = [&](int slot, int used) {
    if (slot == 12) {
      if (used > 0 && satisfies_matching(c)) visit(c);
      return;
    }
    for (int n = 0; used + n <= max_len; ++n) {
      c.corner[slot / 3][slot % 3] = n;
      rec(slot + 1, used + n);
    }
    c.corner[slot / 3][slot % 3] = 0;
  };
  rec(0, 0);
}

}  // namespace

std::set<int> enumerate_normal_curve_lengths(int max_len) {
  if (max_len < 0 || max_len > 20) throw Error(ErrorKind::InvalidInput, "max_len must be in [0, 20]");
  std::set<int> out;
  for_each_matching(max_len, [&](const NormalCurveCounts& c) {
    const int len = c.length();
    if (!out.count(len) && curve_components(c) == 1) out.insert(len);
  });
  return out;
}

std::vector<NormalCurveCounts> connected_normal_curves(int length) {
  if (length < 0 || length > 20) throw Error(ErrorKind::InvalidInput, "length must be in [0, 20]");
  std::vector<NormalCurveCounts> out;
  for_each_matching(length, [&](const NormalCurveCounts& c) {
    if (c.length() == length && curve_components(c) == 1) out.push_back(c);
  });
  return out;
}

}  // namespace qnk
