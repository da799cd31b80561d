#pragma once

#include <optional>
#include <variant>

#include "cbeam/linalg.hpp"

namespace cbeam {

/// Linear elastic material. nu only enters the analytic benchmark formulas.
struct Material {
  double E;
  double G;
  double nu;

  static Material from_E_nu(double E, double nu);
  static Material from_E_G(double E, double G);
};

/// Same second moment I about every axis in the cross-section plane: I_Sigma = I Q.
struct IsotropicInertia {
  double I;
};

/// Principal second moments with a reference director fixing the section orientation.
/// With n1 the director projected onto the normal plane and n2 = t x n1,
/// I1 = int xi1^2 dA (xi1 measured along n1) and I2 = int xi2^2 dA.
struct OrientedInertia {
  double I1;
  double I2;
  Vec3d director;
};

struct CrossSection {
  double area;
  std::variant<IsotropicInertia, OrientedInertia> inertia;
  double polar;
};

struct RectShape {
  double w;
  double h;
  std::optional<Vec3d> director;  // points along h
};
struct CircleShape {
  double d;
};
/// Rectangle of unit depth and thickness t, treated as isotropic with I = t^3 / 12.
struct UnitDepthRectShape {
  double t;
};
using SectionShape = std::variant<RectShape, CircleShape, UnitDepthRectShape>;

CrossSection section_from_shape(const SectionShape& shape);

/// Tensor of area moments int (zeta x t) (x) (zeta x t) dA at unit tangent t.
Mat3d inertia_tensor(const CrossSection& section, const Vec3d& t);

enum class ThicknessScaling {
  Quadratic,  // area ~ t^2, inertias ~ t^4
  UnitDepth,  // area ~ t,   inertias ~ t^3
};

struct ThicknessFamily {
  CrossSection reference;  // section at thickness 1
  ThicknessScaling law = ThicknessScaling::Quadratic;
};

CrossSection scale(const ThicknessFamily& family, double t);

}  // namespace cbeam
