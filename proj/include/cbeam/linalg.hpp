#pragma once

#include <Eigen/Dense>

namespace cbeam {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

/// Projector onto the tangent line, t (x) t.
template <typename Derived>
Mat3<typename Derived::Scalar> tangent_projector(const Eigen::MatrixBase<Derived>& t) {
  return t * t.transpose();
}

/// Projector onto the cross-section plane, I - t (x) t.
template <typename Derived>
Mat3<typename Derived::Scalar> normal_projector(const Eigen::MatrixBase<Derived>& t) {
  using Scalar = typename Derived::Scalar;
  return Mat3<Scalar>::Identity() - t * t.transpose();
}

/// Cross-product matrix: skew(a) * b == a.cross(b).
template <typename Derived>
Mat3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Mat3<Scalar> m;
  m << Scalar(0), -a(2), a(1),
       a(2), Scalar(0), -a(0),
       -a(1), a(0), Scalar(0);
  return m;
}

/// Deterministic orthonormal completion {n1, n2} of a unit vector t with n1 x n2 = t.
/// Only used to express two-row constraints in the normal plane.
template <typename Scalar>
std::pair<Vec3<Scalar>, Vec3<Scalar>> normal_basis(const Vec3<Scalar>& t) {
  Eigen::Index axis = 0;
  t.cwiseAbs().minCoeff(&axis);
  Vec3<Scalar> e = Vec3<Scalar>::Unit(axis);
  Vec3<Scalar> n1 = (e - t * t.dot(e)).normalized();
  Vec3<Scalar> n2 = t.cross(n1);
  return {n1, n2};
}

}  // namespace cbeam
