#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"

#include "cbeam/assembly.hpp"
#include "cbeam/errors.hpp"
#include "cbeam/kinematics.hpp"

using namespace cbeam;

namespace {

const Material kMat = Material::from_E_nu(2e5, 0.3);
const CrossSection kCirc = section_from_shape(CircleShape{0.1});

BeamModel straight(double L) { return BeamModel{Curve(ParamCurve::line(Vec3d::Zero(), Vec3d(L, 0, 0))), kMat, kCirc}; }

double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).norm() / b.norm(); }

// Submatrix of a dense K for the given global dofs.
Eigen::MatrixXd pick(const Eigen::MatrixXd& K, const std::vector<int>& dofs) {
  Eigen::MatrixXd out(dofs.size(), dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i)
    for (std::size_t j = 0; j < dofs.size(); ++j) out(i, j) = K(dofs[i], dofs[j]);
  return out;
}

// Derivative of the quadratic Lagrange basis on [0, h] with nodes 0, h/2, h.
Eigen::Vector3d dp2(double s, double h) {
  const double x = s / h;
  return Eigen::Vector3d(4 * x - 3, 4 - 8 * x, 4 * x - 1) / h;
}

}  // namespace

TEST_CASE("kinematic measures of analytic fields") {
  SUBCASE("constant pure twist on a straight beam") {
    const Vec3d t = Vec3d(1, 2, 2) / 3.0;
    const auto m = kinematic_measures<double>(t, Vec3d::Zero(), 0.4 * t, Vec3d::Zero());
    CHECK(m.shear.norm() <= 1e-15);
    CHECK(m.twist.norm() == 0.0);
    CHECK(m.bending.norm() == 0.0);
  }

  SUBCASE("rigid rotation on a helix") {
    const Curve helix(ParamCurve::helix(1.0, 0.4, 0.2, 5.0));
    const Vec3d w(0.3, -0.7, 0.5);
    for (double s : {0.0, 1.1, 2.9, helix.length()}) {
      const FrameSample f = eval_frame(helix, s);
      // u = w x r: u' = w x t, u'' = w x kappa; theta = w, theta_t = w . t
      const auto m = kinematic_measures<double>(f.t, w.cross(f.t), w, Vec3d::Zero());
      CHECK(m.axial.norm() <= 1e-10);
      CHECK(m.shear.norm() <= 1e-10);
      CHECK(m.bending.norm() <= 1e-10);
      CHECK(m.twist.norm() <= 1e-10);
      const auto eb = kinematic_measures_eb<double>(f.t, f.kappa, w.cross(f.t), w.cross(f.kappa), w.dot(f.t),
                                                    w.dot(f.kappa));
      CHECK(eb.axial.norm() <= 1e-10);
      CHECK(eb.bending.norm() <= 1e-10);
      CHECK(eb.twist.norm() <= 1e-10);
    }
  }

  SUBCASE("unit tangential displacement on an arc") {
    const double R = 2.5;
    const Curve arc(ParamCurve::arc(Vec3d::Zero(), R, Vec3d::UnitX(), Vec3d::UnitY(), 0.0, 1.5));
    const FrameSample f = eval_frame(arc, 1.0);
    // u = t(s), u' = kappa
    const auto m = kinematic_measures<double>(f.t, f.kappa, Vec3d::Zero(), Vec3d::Zero());
    CHECK((m.shear - f.kappa).norm() <= 1e-14);
    CHECK(m.shear.norm() == doctest::Approx(1.0 / R).epsilon(1e-12));
    CHECK(m.axial.norm() <= 1e-15);
  }
}

TEST_CASE("quadratic bar stiffness") {
  const double h = 0.8;
  const BeamModel m = straight(h);
  const Discretization d = Discretization::uniform(h, FormulationKind::TimoshenkoP2P1, 1, QuadraturePolicy::Full);
  const Eigen::MatrixXd K = assemble_stiffness<double>(m, d, kStretch);
  const auto dofs = d.dofs.element_dofs(0);
  const Eigen::MatrixXd Kx = pick(K, {dofs[0], dofs[3], dofs[6]});  // x components of [a, mid, b]
  Eigen::Matrix3d ref;
  ref << 7, -8, 1, -8, 16, -8, 1, -8, 7;
  ref *= kMat.E * kCirc.area / (3 * h);
  CHECK(rel_diff(Kx, ref) <= 1e-13);
  // no transverse stiffness from the stretch term on a straight line
  CHECK(pick(K, {dofs[1], dofs[4], dofs[7]}).norm() <= 1e-12 * ref.norm());
}

TEST_CASE("straight-beam Timoshenko element against a textbook 2D element") {
  // Planar bending in the x-y plane: deflection w = u_y (P2), rotation theta_z (P1),
  // shear strain w' - theta, curvature theta'.
  const double h = 0.7;
  const double EI = kMat.E * std::get<IsotropicInertia>(kCirc.inertia).I;
  const double GA = kMat.G * kCirc.area;
  const double g = std::sqrt(0.6);
  const double xs[3] = {(1 - g) / 2 * h, h / 2, (1 + g) / 2 * h};
  const double ws[3] = {5.0 / 18 * h, 8.0 / 18 * h, 5.0 / 18 * h};
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(5, 5);
  for (int q = 0; q < 3; ++q) {
    const double s = xs[q];
    Eigen::VectorXd shear(5), curv(5);
    const Eigen::Vector3d dN = dp2(s, h);
    shear << dN, -(1 - s / h), -(s / h);
    curv << 0, 0, 0, -1 / h, 1 / h;
    ref += ws[q] * (GA * shear * shear.transpose() + EI * curv * curv.transpose());
  }
  for (QuadraturePolicy p : {QuadraturePolicy::Full, QuadraturePolicy::Reduced}) {
    const Discretization d = Discretization::uniform(h, FormulationKind::TimoshenkoP2P1, 1, p);
    const Eigen::MatrixXd K = assemble_stiffness<double>(straight(h), d);
    const auto e = d.dofs.element_dofs(0);
    const int a = d.dofs.angle_offset();
    const Eigen::MatrixXd Kp = pick(K, {e[1], e[4], e[7], e[a + 2], e[a + 5]});
    CHECK(rel_diff(Kp, ref) <= 1e-10);
  }
}

TEST_CASE("straight-beam Euler-Bernoulli element against the Hermite beam matrix") {
  const double h = 0.6;
  const double EI = kMat.E * std::get<IsotropicInertia>(kCirc.inertia).I;
  Eigen::Matrix4d ref;
  ref << 12, 6 * h, -12, 6 * h, 6 * h, 4 * h * h, -6 * h, 2 * h * h, -12, -6 * h, 12, -6 * h, 6 * h, 2 * h * h, -6 * h,
      4 * h * h;
  ref *= EI / (h * h * h);
  const Discretization d = Discretization::uniform(h, FormulationKind::EulerBernoulliH3, 1);
  const Eigen::MatrixXd K = assemble_stiffness<double>(straight(h), d);
  const auto e = d.dofs.element_dofs(0);
  // H3 local order [value a, slope a, value b, slope b], y components
  CHECK(rel_diff(pick(K, {e[1], e[4], e[7], e[10]}), ref) <= 1e-10);
}

TEST_CASE("stiffness symmetry and reduced-rule modes") {
  const BeamModel m{Curve(ParamCurve::hermite_clamped({Vec3d(0, 0, 0), Vec3d(1, 0.4, 0.1), Vec3d(1.8, 1.2, 0.5)},
                                                      Vec3d(1, 0, 0), Vec3d(0, 1, 1))),
                    kMat, section_from_shape(RectShape{0.1, 0.2, Vec3d::UnitZ()})};
  for (auto kind : {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2, FormulationKind::EulerBernoulliH3})
    for (auto p : {QuadraturePolicy::Full, QuadraturePolicy::Reduced}) {
      const Discretization d = Discretization::uniform(m.curve.length(), kind, 5, p);
      const Eigen::MatrixXd K = assemble_stiffness<double>(m, d);
      CHECK((K - K.transpose()).norm() <= 1e-12 * K.norm());

      const auto modes = zero_energy_modes(d);
      const bool expect = kind == FormulationKind::TimoshenkoH3P2 && p == QuadraturePolicy::Reduced;
      CHECK(modes.size() == (expect ? 3u : 0u));
      for (const auto& mode : modes) {
        const Eigen::MatrixXd Ks = assemble_stiffness<double>(m, d, kStretch | kShear);
        CHECK((Ks * mode).norm() <= 1e-12 * Ks.norm() * mode.norm());
      }
      const auto rows = zero_energy_constraints(m, d);
      CHECK(rows.size() == modes.size());
      for (const auto& r : rows) CHECK(r.compliance > 0);
    }
}

TEST_CASE("load vector") {
  const double h = 0.9;
  BeamModel m = straight(h);
  const Discretization d = Discretization::uniform(h, FormulationKind::TimoshenkoP2P1, 1);
  CHECK(assemble_load(m, d).norm() == 0.0);

  const Vec3d f(1, -2, 0.5);
  m.loads.body = [f](double) { return f; };
  const Eigen::VectorXd b = assemble_load(m, d);
  const auto e = d.dofs.element_dofs(0);
  const double w[3] = {1.0 / 6, 2.0 / 3, 1.0 / 6};
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 3; ++c) CHECK(b[e[3 * k + c]] == doctest::Approx(h * kCirc.area * f[c] * w[k]).epsilon(1e-14));

  // Tip point load lands on the three midline values of the end node and nowhere else.
  BeamModel tip = straight(2.0);
  tip.loads.end.force = Vec3d(0.3, -1.0, 2.0);
  const Discretization d3 = Discretization::uniform(2.0, FormulationKind::TimoshenkoH3P2, 3);
  const Eigen::VectorXd bt = assemble_load(tip, d3);
  for (int c = 0; c < 3; ++c) CHECK(bt[d3.dofs.node_dof(Field::Midline, 3, c)] == tip.loads.end.force[c]);
  CHECK(bt.cwiseAbs().sum() == doctest::Approx(tip.loads.end.force.cwiseAbs().sum()));

  // Natural values use the bracket sign: +1 at s = L, -1 at s = 0.
  BeamModel nat = straight(2.0);
  nat.start = BoundaryCondition::free();
  nat.end = BoundaryCondition::clamped();
  nat.start.stretch.value = 0.7;
  const PointLoad p0 = end_load(nat, false);
  CHECK((p0.force - Vec3d(-0.7, 0, 0)).norm() <= 1e-15);

  // A shear value with a tangential part is projected, with a warning.
  BeamModel proj = straight(2.0);
  proj.end.shear.value = Vec3d(1.0, 0.5, 0);
  std::vector<std::string> warnings;
  const PointLoad p1 = end_load(proj, true, &warnings);
  CHECK((p1.force - Vec3d(0, 0.5, 0)).norm() <= 1e-15);
  CHECK(warnings.size() == 1);
}

TEST_CASE("essential constraint rows") {
  const auto rows = [](BoundaryCondition a, BoundaryCondition b, FormulationKind k) {
    BeamModel m = straight(1.0);
    m.start = a;
    m.end = b;
    return essential_constraints(m, Discretization::uniform(1.0, k, 2)).size();
  };
  for (auto k : {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2, FormulationKind::EulerBernoulliH3}) {
    CHECK(rows(BoundaryCondition::clamped(), BoundaryCondition::free(), k) == 6);
    CHECK(rows(BoundaryCondition::free(), BoundaryCondition::free(), k) == 0);
    CHECK(rows(BoundaryCondition::pinned(), BoundaryCondition::free(), k) == 3);
    CHECK(rows(BoundaryCondition::clamped(), BoundaryCondition::pinned(), k) == 9);
  }
  BoundaryCondition g = BoundaryCondition::free();
  g.guided = {Vec3d::UnitY(), Vec3d::UnitZ()};
  CHECK(rows(BoundaryCondition::clamped(), g, FormulationKind::TimoshenkoH3P2) == 8);

  // Clamped Timoshenko end: rows touch only u and theta at node 0.
  BeamModel m = straight(1.0);
  const Discretization d = Discretization::uniform(1.0, FormulationKind::TimoshenkoP2P1, 2);
  std::set<int> touched;
  for (const auto& r : essential_constraints(m, d))
    for (auto [j, c] : r.coefficients)
      if (c != 0) touched.insert(j);
  std::set<int> expect;
  for (int c = 0; c < 3; ++c) {
    expect.insert(d.dofs.node_dof(Field::Midline, 0, c));
    expect.insert(d.dofs.node_dof(Field::Angle, 0, c));
  }
  CHECK(touched == expect);
}
