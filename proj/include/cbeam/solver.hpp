#pragma once

#include <Eigen/Dense>

#include "cbeam/assembly.hpp"

namespace cbeam {

template <typename Scalar>
struct BasicSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  /// Coefficients in DofMap numbering: midline values (and Hermite derivatives), then angles.
  Vector coefficients;
  /// One multiplier per retained constraint row.
  Vector multipliers;
  double residual = 0.0;             // |K x + B^T l - b|
  double constraint_residual = 0.0;  // |B x - g|
  double condition_estimate = 0.0;   // 1-norm estimate of the equilibrated saddle-point matrix
};

using SolutionFields = BasicSolution<double>;

/// Direct solve of [K B^T; B 0] [x; l] = [b; g]. Throws SingularSystemError when
/// the factorization fails or the condition estimate exceeds 1e15.
template <typename Scalar>
BasicSolution<Scalar> solve(const BasicLinearSystem<Scalar>& system);

/// Working precision of solve_model.
using Real = long double;
using Vec3r = Vec3<Real>;

/// Model, discretization, assembled system and solution kept together for post-processing.
struct SolvedModel {
  BeamModel model;
  Discretization disc;
  BasicLinearSystem<Real> system;
  BasicSolution<Real> fields;
};

SolvedModel solve_model(BeamModel model, Discretization disc);

}  // namespace cbeam
