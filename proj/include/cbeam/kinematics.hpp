#pragma once

#include "cbeam/linalg.hpp"

namespace cbeam {

/// Strain measures of the beam at one point of the midline. All derivatives are
/// tangential derivatives (t . grad) = d/ds.
///
///   axial   = P u'              (in-line strain of the midline)
///   shear   = Q u' - theta x t  (twice the shear strain, cross-section average)
///   bending = Q theta'          (pairs with the inertia tensor I_Sigma)
///   twist   = P theta'          (pairs with the polar inertia J_Sigma)
template <typename Scalar>
struct KinematicMeasures {
  Vec3<Scalar> axial;
  Vec3<Scalar> shear;
  Vec3<Scalar> bending;
  Vec3<Scalar> twist;
};

/// Timoshenko kinematics: independent midline displacement u and rotation theta.
template <typename Scalar>
KinematicMeasures<Scalar> kinematic_measures(const Vec3<Scalar>& t, const Vec3<Scalar>& du,
                                             const Vec3<Scalar>& theta, const Vec3<Scalar>& dtheta) {
  const Mat3<Scalar> P = tangent_projector(t);
  const Mat3<Scalar> Q = normal_projector(t);
  return {P * du, Q * du - theta.cross(t), Q * dtheta, P * dtheta};
}

/// Euler-Bernoulli kinematics: theta = t x u' + t theta_t, so
///   theta'  = kappa x u' + t x u'' + kappa theta_t + t theta_t'
///   bending = Q theta',  twist = t (theta_t' - (t x u') . kappa),  shear = 0.
template <typename Scalar>
KinematicMeasures<Scalar> kinematic_measures_eb(const Vec3<Scalar>& t, const Vec3<Scalar>& kappa,
                                                const Vec3<Scalar>& du, const Vec3<Scalar>& ddu, Scalar theta_t,
                                                Scalar dtheta_t) {
  const Mat3<Scalar> Q = normal_projector(t);
  const Vec3<Scalar> rot = t.cross(du);
  return {t * t.dot(du), Vec3<Scalar>::Zero(), Q * (kappa.cross(du) + t.cross(ddu) + kappa * theta_t),
          t * (dtheta_t - rot.dot(kappa))};
}

}  // namespace cbeam
