#pragma once

#include <vector>

#include "qnk/complex.hpp"
#include "qnk/geometry.hpp"

namespace qnk {

struct SimplexQuality {
  int dim = 3;
  double fatness_phi = 0.0;
  double insphere_r = 0.0;
  double circumsphere_R = 0.0;
  /// Six dihedral angles for a tet (local edge order 01,02,03,12,13,23), the three
  /// vertex angles for a triangle.
  std::vector<double> dihedral_angles;
  double diameter = 0.0;
  double volume = 0.0;
  Vec3 circumcenter;
  Vec3 incenter;
  /// Extremes of Vol_j(s)/diam(s)^j over all faces s of dimension 1..dim.
  double face_ratio_min = 0.0;
  double face_ratio_max = 0.0;

  double min_dihedral() const;
};

/// 3 points (triangle) or 4 points (tet). Throws DegenerateSimplex.
SimplexQuality simplex_quality(const std::vector<Vec3>& pts);
SimplexQuality tet_quality(const std::array<Vec3, 4>& p);

struct FatnessConditions {
  bool angle_condition_holds = false;
  bool area_condition_holds = false;
  double phi = 0.0;
  double min_dihedral = 0.0;
  double face_ratio_min = 0.0;
  double face_ratio_max = 0.0;
};

/// phi/c_k <= min angle <= c_k*phi and phi/c_k <= Vol_j/diam^j <= c_k*phi.
FatnessConditions check_fatness_conditions(const SimplexQuality& q, double c_k);

std::vector<SimplexQuality> complex_quality(const Complex3& c);
double complex_fatness(const Complex3& c);

}  // namespace qnk
