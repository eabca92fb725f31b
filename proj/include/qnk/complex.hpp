#pragma once

#include <array>
#include <string>
#include <vector>

#include "qnk/geometry.hpp"

namespace qnk {

using Tet = std::array<int, 4>;
using Tri = std::array<int, 3>;
using Seg = std::array<int, 2>;
using Shift = std::array<int, 3>;

enum class AmbientKind { EuclideanRegion, FlatTorus3 };

struct AmbientModel {
  AmbientKind kind = AmbientKind::EuclideanRegion;
  Vec3 period{1.0, 1.0, 1.0};

  static AmbientModel euclidean() { return {}; }
  static AmbientModel torus(const Vec3& period);
  bool is_torus() const { return kind == AmbientKind::FlatTorus3; }
  Vec3 shift_vector(const Shift& s) const;
};

/// Curvature budget and injectivity radius of the ambient manifold. Inputs only.
struct ManifoldBounds {
  double curvature_budget_C = 0.0;
  double inj_radius = 1.0;
};

enum class FaceLabel { Internal, Boundary, PeripheralOnly };
enum class TetLabel { Internal, Peripheral };

const char* to_string(AmbientKind k);
const char* to_string(FaceLabel l);
const char* to_string(TetLabel l);

/// Minimum-image displacement q - p.
Vec3 ambient_delta(const Vec3& p, const Vec3& q, const AmbientModel& ambient);
double ambient_distance(const Vec3& p, const Vec3& q, const AmbientModel& ambient);

/// Validated simplicial 3-complex. Tets are stored positively oriented. Edges and
/// faces are sorted vertex tuples in lexicographic order.
///
/// In a flat torus the complex is a patch of R^3 covering one period; cells that
/// differ by a lattice translation are identified through the *_class arrays, and
/// *_shift records the translation taking the cell into its canonical position.
class Complex3 {
 public:
  const AmbientModel& ambient() const { return ambient_; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Tet>& tets() const { return tets_; }
  const std::vector<Seg>& edges() const { return edges_; }
  const std::vector<Tri>& faces() const { return faces_; }

  /// Local edge order 01, 02, 03, 12, 13, 23.
  const std::array<int, 6>& tet_edges(int t) const { return tet_edges_[t]; }
  /// Face i is opposite local vertex i.
  const std::array<int, 4>& tet_faces(int t) const { return tet_faces_[t]; }
  /// Incident tets of an R^3 face; second entry is -1 when only one.
  const std::array<int, 2>& face_tets(int f) const { return face_tets_[f]; }

  FaceLabel face_label(int f) const { return face_labels_[f]; }
  TetLabel tet_label(int t) const { return tet_labels_[t]; }
  bool edge_on_boundary(int e) const { return edge_boundary_[e] != 0; }
  bool vertex_on_boundary(int v) const { return vertex_boundary_[v] != 0; }

  int face_class(int f) const { return face_class_[f]; }
  const Shift& face_shift(int f) const { return face_shift_[f]; }
  int edge_class(int e) const { return edge_class_[e]; }
  const Shift& edge_shift(int e) const { return edge_shift_[e]; }
  int vertex_class(int v) const { return vertex_class_[v]; }
  const Shift& vertex_shift(int v) const { return vertex_shift_[v]; }
  int face_class_count() const { return n_face_classes_; }

  int find_edge(int a, int b) const;
  int find_face(int a, int b, int c) const;

  std::array<Vec3, 4> tet_points(int t) const;
  Vec3 face_point(int f, int i) const { return vertices_[faces_[f][i]]; }

  friend Complex3 build_complex(std::vector<Vec3>, std::vector<Tet>, AmbientModel);

 private:
  AmbientModel ambient_;
  std::vector<Vec3> vertices_;
  std::vector<Tet> tets_;
  std::vector<Seg> edges_;
  std::vector<Tri> faces_;
  std::vector<std::array<int, 6>> tet_edges_;
  std::vector<std::array<int, 4>> tet_faces_;
  std::vector<std::array<int, 2>> face_tets_;
  std::vector<FaceLabel> face_labels_;
  std::vector<TetLabel> tet_labels_;
  std::vector<char> edge_boundary_;
  std::vector<char> vertex_boundary_;
  std::vector<int> face_class_, edge_class_, vertex_class_;
  std::vector<Shift> face_shift_, edge_shift_, vertex_shift_;
  int n_face_classes_ = 0;
};

/// Validates and builds. Throws IndexOutOfRange, DegenerateTet, DuplicateSimplex,
/// ImproperIntersection, InvalidInput.
Complex3 build_complex(std::vector<Vec3> vertices, std::vector<Tet> tets,
                       AmbientModel ambient = {});

double tet_diameter(const Complex3& c, int t);
double mesh_size(const Complex3& c);

/// Positive orientation, then the lexicographically smallest even permutation.
Tet canonical_tet(const Tet& t, const std::vector<Vec3>& vertices);

}  // namespace qnk
