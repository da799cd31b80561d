#include <cmath>

#include "doctest.h"

#include "cbeam/errors.hpp"
#include "cbeam/postprocess.hpp"
#include "cbeam/solver.hpp"

using namespace cbeam;

namespace {

constexpr FormulationKind kAll[] = {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2,
                                    FormulationKind::EulerBernoulliH3};

const Material kMat = Material::from_E_nu(1e5, 0.25);
const CrossSection kCirc = section_from_shape(CircleShape{0.2});

BeamModel tilted(double L) {
  const Vec3d d = Vec3d(2, -1, 2) / 3.0;
  return BeamModel{Curve(ParamCurve::line(Vec3d(1, 0, 0), Vec3d(1, 0, 0) + L * d)), kMat, kCirc};
}

}  // namespace

TEST_CASE("small saddle-point system") {
  // min 1/2 x^T K x - b^T x subject to x0 + x1 = 1
  LinearSystem sys;
  sys.K.resize(2, 2);
  sys.K.insert(0, 0) = 2.0;
  sys.K.insert(1, 1) = 4.0;
  sys.rhs = Eigen::Vector2d(0, 0);
  sys.constraints.push_back({{{0, 1.0}, {1, 1.0}}, 1.0, 0.0, "sum"});
  const SolutionFields s = solve(sys);
  CHECK(s.coefficients[0] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(s.coefficients[1] == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(s.multipliers[0] == doctest::Approx(-4.0 / 3).epsilon(1e-14));
  CHECK(s.residual <= 1e-14);

  // A compliant row adds g g^T / c to the stiffness instead of enforcing the row.
  LinearSystem pen = sys;
  pen.rhs = Eigen::Vector2d(1, 0);
  pen.constraints = {{{{0, 1.0}}, 0.0, 0.5, "penalty"}};
  const SolutionFields p = solve(pen);
  CHECK(p.coefficients[0] == doctest::Approx(1.0 / 4).epsilon(1e-14));  // (2 + 1/0.5) x0 = 1
  CHECK(std::abs(p.coefficients[1]) <= 1e-15);
}

TEST_CASE("axial patch test is exact") {
  const double L = 1.5, F = 2.0;
  BeamModel m = tilted(L);
  const Vec3d d = eval_frame(m.curve, 0.0).t;
  m.loads.end.force = F * d;
  const double EA = kMat.E * kCirc.area;
  for (auto k : kAll)
    for (auto p : {QuadraturePolicy::Full, QuadraturePolicy::Reduced}) {
      const SolvedModel sol = solve_model(m, Discretization::uniform(L, k, 3, p));
      for (double s : {0.0, 0.2, 0.75, 1.1, L}) {
        const Vec3r u = evaluate(sol, s).u;
        CHECK((u.cast<double>() - F * s / EA * d).norm() <= 1e-13 * F * L / EA);
      }
    }
}

TEST_CASE("singular systems are reported") {
  BeamModel m = tilted(1.0);
  m.start = BoundaryCondition::free();
  m.end = BoundaryCondition::free();
  for (auto k : kAll) {
    try {
      solve_model(m, Discretization::uniform(1.0, k, 2));
      FAIL("expected SingularSystemError");
    } catch (const SingularSystemError& e) {
      CHECK(e.suspected_modes() >= 1);
    }
  }
}

TEST_CASE("prescribed rigid translation") {
  const Vec3d ubar(0.01, -0.02, 0.005);
  BeamModel m{Curve(ParamCurve::helix(1.0, 0.2, 0.0, 3.0)), kMat, kCirc};
  const Vec3d t0 = eval_frame(m.curve, 0.0).t;
  m.start.stretch.value = ubar.dot(t0);
  m.start.shear.value = ubar - t0 * t0.dot(ubar);
  for (auto k : kAll) {
    const SolvedModel sol = solve_model(m, Discretization::uniform(m.curve.length(), k, 6));
    for (double s : {0.0, 1.0, m.curve.length()}) CHECK((evaluate(sol, s).u.cast<double>() - ubar).norm() <= 1e-12);
    CHECK(strain_energy(sol) <= 1e-12 * kMat.E * ubar.squaredNorm());
  }
}

TEST_CASE("contradicting essential conditions") {
  BeamModel m = tilted(1.0);
  m.start.stretch.value = 0.1;
  m.start.guided = {eval_frame(m.curve, 0.0).t};  // demands u_t = 0 at the same end
  CHECK_THROWS_AS(solve_model(m, Discretization::uniform(1.0, FormulationKind::TimoshenkoH3P2, 2)),
                  ConstraintConflictError);

  BeamModel ok = tilted(1.0);
  ok.start.guided = {eval_frame(ok.curve, 0.0).t};  // consistent duplicate, dropped
  CHECK_NOTHROW(solve_model(ok, Discretization::uniform(1.0, FormulationKind::TimoshenkoH3P2, 2)));
}

TEST_CASE("reduced-rule mode under a load that works on it") {
  // A linearly varying axial body load has a component along the Hermite slope mode.
  BeamModel m = tilted(2.0);
  const Vec3d d = eval_frame(m.curve, 0.0).t;
  m.loads.body = [d](double s) { return (1.0 + 3.0 * s * s) * d; };
  const SolvedModel red = solve_model(m, Discretization::uniform(2.0, FormulationKind::TimoshenkoH3P2, 4));
  const Reactions r = reactions(red);
  const EndReaction app = applied_load(red);
  CHECK((r.start.force + app.force).norm() <= 1e-12 * app.force.norm());
  const auto& u = red.fields.coefficients;
  const double l = double(u.dot(red.system.rhs));
  CHECK(std::abs(2 * strain_energy(red) - l) <= 1e-12 * std::abs(l));
}
