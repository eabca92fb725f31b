#include "qnk/surface.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "qnk/error.hpp"

namespace qnk {

std::array<Vec3, 3> SurfaceMesh::triangle_points(std::size_t t) const {
  const Tri& v = triangles[t];
  const Vec3& a = vertices[v[0]];
  if (!ambient.is_torus()) return {a, vertices[v[1]], vertices[v[2]]};
  return {a, a + ambient_delta(a, vertices[v[1]], ambient), a + ambient_delta(a, vertices[v[2]], ambient)};
}

Vec3 SurfaceMesh::triangle_normal(std::size_t t) const {
  auto p = triangle_points(t);
  return normalized(cross(p[1] - p[0], p[2] - p[0]));
}

SurfaceTopology surface_topology(const SurfaceMesh& s) {
  SurfaceTopology topo;
  const int nv = static_cast<int>(s.vertices.size());
  // directed edge -> count
  std::map<std::pair<int, int>, int> directed;
  std::vector<char> used(nv, 0);
  for (std::size_t t = 0; t < s.triangles.size(); ++t) {
    const Tri& v = s.triangles[t];
    for (int i = 0; i < 3; ++i) {
      if (v[i] < 0 || v[i] >= nv) throw Error(ErrorKind::NonManifoldSurface, "triangle index out of range");
      used[v[i]] = 1;
    }
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
      throw Error(ErrorKind::NonManifoldSurface, "triangle " + std::to_string(t) + " repeats a vertex");
    for (int i = 0; i < 3; ++i) ++directed[{v[i], v[(i + 1) % 3]}];
  }
  std::map<std::pair<int, int>, int> undirected;
  for (auto& [e, n] : directed) {
    if (n > 1) topo.consistently_oriented = false;
    undirected[{std::min(e.first, e.second), std::max(e.first, e.second)}] += n;
  }
  for (auto& [e, n] : undirected) {
    if (n > 2) throw Error(ErrorKind::NonManifoldSurface, "edge in more than two triangles");
    if (n == 1) ++topo.boundary_edges;
  }
  topo.vertices = static_cast<int>(std::count(used.begin(), used.end(), 1));
  topo.edges = static_cast<int>(undirected.size());
  topo.faces = static_cast<int>(s.triangles.size());
  topo.euler_characteristic = topo.vertices - topo.edges + topo.faces;
  return topo;
}

double surface_area(const SurfaceMesh& s) {
  double a = 0.0;
  for (std::size_t t = 0; t < s.triangles.size(); ++t) {
    auto p = s.triangle_points(t);
    a += triangle_area(p[0], p[1], p[2]);
  }
  return a;
}

double max_triangle_diameter(const SurfaceMesh& s) {
  double d = 0.0;
  for (std::size_t t = 0; t < s.triangles.size(); ++t) {
    auto p = s.triangle_points(t);
    d = std::max({d, distance(p[0], p[1]), distance(p[1], p[2]), distance(p[0], p[2])});
  }
  return d;
}

namespace {

// Next token, skipping '#' comments.
bool next_token(std::istream& in, std::string& tok) {
  while (in >> tok) {
    if (tok[0] != '#') return true;
    std::string rest;
    std::getline(in, rest);
  }
  return false;
}

template <class T>
T parse_number(std::istream& in, const char* what) {
  std::string tok;
  if (!next_token(in, tok)) throw Error(ErrorKind::InvalidInput, std::string("OFF: missing ") + what);
  std::istringstream ss(tok);
  T v{};
  if (!(ss >> v)) throw Error(ErrorKind::InvalidInput, std::string("OFF: bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace

SurfaceMesh read_off(std::istream& in) {
  std::string tok;
  if (!next_token(in, tok) || tok != "OFF") throw Error(ErrorKind::InvalidInput, "OFF: missing header");
  const int nv = parse_number<int>(in, "vertex count");
  const int nf = parse_number<int>(in, "face count");
  parse_number<int>(in, "edge count");
  if (nv < 0 || nf < 0) throw Error(ErrorKind::InvalidInput, "OFF: negative counts");
  SurfaceMesh s;
  s.vertices.resize(nv);
  for (auto& v : s.vertices)
    for (int k = 0; k < 3; ++k) v[k] = parse_number<double>(in, "coordinate");
  for (int f = 0; f < nf; ++f) {
    if (parse_number<int>(in, "face size") != 3) throw Error(ErrorKind::InvalidInput, "OFF: only triangles supported");
    Tri t{};
    for (int k = 0; k < 3; ++k) {
      t[k] = parse_number<int>(in, "face index");
      if (t[k] < 0 || t[k] >= nv) throw Error(ErrorKind::IndexOutOfRange, "OFF: face index out of range");
    }
    s.triangles.push_back(t);
  }
  return s;
}

SurfaceMesh read_off_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  return read_off(in);
}

void write_off(std::ostream& out, const SurfaceMesh& s) {
  out << "OFF\n" << s.vertices.size() << ' ' << s.triangles.size() << " 0\n";
  out << std::setprecision(17);
  for (auto& v : s.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (auto& t : s.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off_file(const std::string& path, const SurfaceMesh& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  write_off(out, s);
}

SurfaceMesh weld_vertices(const SurfaceMesh& s, double tol) {
  SurfaceMesh out;
  out.ambient = s.ambient;
  std::map<std::array<long long, 3>, int> ids;
  std::vector<int> remap(s.vertices.size(), -1);
  auto key_of = [&](const Vec3& p) {
    std::array<long long, 3> q{};
    for (int k = 0; k < 3; ++k) {
      q[k] = std::llround(p[k] / tol);
      if (s.ambient.is_torus()) {
        const long long m = std::llround(s.ambient.period[k] / tol);
        q[k] = ((q[k] % m) + m) % m;
      }
    }
    return q;
  };
  for (auto& t : s.triangles) {
    Tri n{};
    for (int i = 0; i < 3; ++i) {
      int& r = remap[t[i]];
      if (r < 0) {
        auto [it, fresh] = ids.emplace(key_of(s.vertices[t[i]]), static_cast<int>(out.vertices.size()));
        if (fresh) out.vertices.push_back(s.vertices[t[i]]);
        r = it->second;
      }
      n[i] = r;
    }
    if (n[0] != n[1] && n[1] != n[2] && n[0] != n[2]) out.triangles.push_back(n);
  }
  return out;
}

}  // namespace qnk
