#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cbeam/geometry.hpp"
#include "cbeam/section.hpp"

namespace cbeam {

enum class Condition { Natural, Essential };

/// One row of the end-condition table for a scalar quantity (stretching, twisting).
/// Natural: prescribed resultant (N . t or T . t); essential: prescribed u_t or theta_t.
struct ScalarRow {
  Condition condition = Condition::Natural;
  double value = 0.0;
};

/// One row for a normal-plane quantity (shearing, bending).
/// Natural: prescribed S or M; essential: prescribed Q u or Q theta.
struct VectorRow {
  Condition condition = Condition::Natural;
  Vec3d value = Vec3d::Zero();
};

/// Conditions at one beam end, one choice per row. Natural values are resultant
/// values in the bracket convention: they enter the load with sign +1 at s = L
/// and -1 at s = 0.
struct BoundaryCondition {
  ScalarRow stretch;
  VectorRow shear;
  VectorRow bend;
  ScalarRow twist;
  /// Extra Cartesian directions along which the end displacement is held at zero
  /// (guided ends).
  std::vector<Vec3d> guided;

  static BoundaryCondition clamped();
  static BoundaryCondition free();
  static BoundaryCondition pinned();
  int essential_rows() const;
};

/// Force and moment applied at a beam end, in global Cartesian components.
struct PointLoad {
  Vec3d force = Vec3d::Zero();
  Vec3d moment = Vec3d::Zero();
};

struct LoadCase {
  /// Body force density per unit volume as a function of arc length; constant over each cross-section.
  std::function<Vec3d(double)> body;
  PointLoad start;
  PointLoad end;
};

struct BeamModel {
  BeamModel(Curve c, const Material& m, const CrossSection& sec) : curve(std::move(c)), material(m), section(sec) {}

  Curve curve;
  Material material;
  CrossSection section;
  BoundaryCondition start = BoundaryCondition::clamped();
  BoundaryCondition end = BoundaryCondition::free();
  LoadCase loads;
};

}  // namespace cbeam
