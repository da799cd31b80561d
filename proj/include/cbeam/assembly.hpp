#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "cbeam/discretization.hpp"
#include "cbeam/model.hpp"

namespace cbeam {

/// Bilinear-form terms, combinable as a bit mask.
enum Term : unsigned {
  kStretch = 1u,
  kShear = 2u,
  kBend = 4u,
  kTwist = 8u,
  kAllTerms = 15u,
};

/// Linear map from an element's local coefficients to the strain measures at one
/// point: measure = op * local_coefficients (layout as in DofMap::element_dofs).
struct PointOperators {
  Eigen::Matrix<double, 3, Eigen::Dynamic> axial;
  Eigen::Matrix<double, 3, Eigen::Dynamic> shear;
  Eigen::Matrix<double, 3, Eigen::Dynamic> bending;
  Eigen::Matrix<double, 3, Eigen::Dynamic> twist;
};

PointOperators point_operators(const FrameSample& frame, const Discretization& disc, const Element& element);

/// One essential condition as a sparse row: sum_j c_j x_j = value. A positive
/// compliance turns it into a penalty-like row, sum_j c_j x_j - compliance * mu = 0,
/// which adds g g^T / compliance to the stiffness instead of enforcing g^T x = 0.
struct ConstraintRow {
  std::vector<std::pair<int, double>> coefficients;
  double value = 0.0;
  double compliance = 0.0;
  std::string label;
};

/// Stiffness and load are held in Scalar; thin-beam systems are ill-conditioned
/// enough (cond ~ (L/t)^2 n^2) that rounding K to double costs digits.
template <typename Scalar>
struct BasicLinearSystem {
  Eigen::SparseMatrix<Scalar> K;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs;
  std::vector<ConstraintRow> constraints;
  std::vector<std::string> warnings;

  int num_dofs() const { return static_cast<int>(rhs.size()); }
};

using LinearSystem = BasicLinearSystem<double>;

/// Element matrices are formed from double-precision point operators and
/// accumulated in Scalar (double or long double).
template <typename Scalar = double>
Eigen::SparseMatrix<Scalar> assemble_stiffness(const BeamModel& model, const Discretization& disc,
                                               unsigned terms = kAllTerms);

/// Body-force term |A| int f . v_mid ds plus the end bracket of natural values and
/// applied end loads.
Eigen::VectorXd assemble_load(const BeamModel& model, const Discretization& disc,
                              std::vector<std::string>* warnings = nullptr);

/// Total force and moment applied at one end: the point load plus natural
/// resultant values with the bracket sign (+1 at s = L, -1 at s = 0). Normal-plane
/// values with a tangential component are projected, with a warning.
PointLoad end_load(const BeamModel& model, bool at_end, std::vector<std::string>* warnings = nullptr);

/// Essential conditions of both ends as Lagrange-multiplier rows. Consistent
/// duplicates are dropped; contradicting duplicates raise ConstraintConflictError.
std::vector<ConstraintRow> essential_constraints(const BeamModel& model, const Discretization& disc,
                                                 std::vector<std::string>* warnings = nullptr);

/// Zero-energy modes that two-point integration of the stretch and shear terms
/// leaves in a Hermite midline: u = c m(s) with zero nodal values and unit nodal
/// slopes along one Cartesian axis, whose slope vanishes at both Gauss points of
/// every element. Empty for every other discretization.
std::vector<Eigen::VectorXd> zero_energy_modes(const Discretization& disc);

/// One compliant row per zero-energy mode m, with g = K_full m (fully integrated
/// stretch and shear) and compliance m^T K_full m. This restores the full-rule
/// stiffness of the mode and nothing else: with no load on m the result is the
/// reduced-rule solution with a_full(m, u) = 0, so states that lie in the space
/// (constant shear, uniform stretch) are reproduced between the nodes too.
std::vector<ConstraintRow> zero_energy_constraints(const BeamModel& model, const Discretization& disc);

/// Essential conditions plus zero_energy_constraints.
template <typename Scalar>
BasicLinearSystem<Scalar> apply_essential_bcs(BasicLinearSystem<Scalar> system, const BeamModel& model,
                                              const Discretization& disc);

/// Stiffness, load and constraints in one go.
template <typename Scalar = double>
BasicLinearSystem<Scalar> assemble(const BeamModel& model, const Discretization& disc);

}  // namespace cbeam
