#pragma once

#include <array>
#include <vector>

#include "qnk/complex.hpp"

namespace qnk {

enum class ShapeClass { Regular, AlmostRegular, General };
const char* to_string(ShapeClass s);

struct TetShapeClass {
  ShapeClass cls = ShapeClass::General;
  int long_edge = -1;  ///< local edge index (01,02,03,12,13,23) when AlmostRegular
  std::array<double, 6> edge_lengths{};
  double rel_tolerance = 1e-6;
};

TetShapeClass classify_tet_shape(const std::array<Vec3, 4>& p, double rel_tol = 1e-6);

using Triangle3 = std::array<Vec3, 3>;
/// Three corner triangles followed by the middle one.
std::array<Triangle3, 4> med_triangle(const Triangle3& t);

enum class ChildRole { Peripheral, Internal };

struct SubdivisionRecord {
  int parent = -1;
  std::array<int, 8> children{};
  std::array<ChildRole, 8> roles{};
  std::array<int, 6> new_vertices{};  ///< midpoint vertex ids in local edge order
  std::array<int, 2> octahedron_diagonal{};  ///< midpoint vertex ids
  std::array<int, 2> diagonal_edges{};  ///< local parent edges carrying the diagonal's ends
  ShapeClass shape = ShapeClass::General;
};

/// Child tets in local form: indices 0..3 are parent vertices, 4..9 the midpoints
/// of local edges 01,02,03,12,13,23. Peripheral children come first.
struct MedTetLocal {
  std::array<Tet, 8> children{};
  std::array<ChildRole, 8> roles{};
  std::array<int, 2> diagonal_edges{};
};

/// ids gives the global vertex id of each parent vertex; only used for tie-breaks.
MedTetLocal med_tet_local(const std::array<Vec3, 4>& p, const TetShapeClass& shape,
                          const std::array<int, 4>& ids = {0, 1, 2, 3});

struct MedTetResult {
  SubdivisionRecord record;
  std::array<std::array<Vec3, 4>, 8> children{};
};
MedTetResult med_tet(const std::array<Vec3, 4>& p, const TetShapeClass& shape);

struct MedResult {
  Complex3 complex;
  std::vector<SubdivisionRecord> records;
};

MedResult med_subdivide(const Complex3& c, double rel_tol = 1e-6);

struct LevelSummary {
  int level = 0;
  std::size_t tets = 0;
  double lambda = 0.0;
  double min_fatness = 0.0;
  std::vector<double> edge_ratio_set;  ///< distinct edge lengths over the shortest
  bool lambda_halved = true;
  bool edge_ratios_ok = true;  ///< ratio set within {1, sqrt 2} to 1e-9
};

/// Distinct ratios of edge lengths to the shortest edge, merged at rel_tol.
std::vector<double> edge_ratio_set(const Complex3& c, double rel_tol = 1e-9);

struct MedLevel {
  Complex3 complex;
  LevelSummary summary;
};

/// T_1..T_n. Only the final complex is kept unless keep_all.
std::vector<MedLevel> med_iterate(const Complex3& c, int n, bool keep_all = true);

}  // namespace qnk
