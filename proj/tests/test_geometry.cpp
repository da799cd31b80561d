#include <cmath>
#include <numbers>

#include "doctest.h"

#include "cbeam/errors.hpp"
#include "cbeam/geometry.hpp"
#include "cbeam/quadrature.hpp"

using namespace cbeam;
using std::numbers::pi;

namespace {

// Central difference of a vector-valued function of arc length.
template <typename F>
Vec3d central(F&& f, double s, double h) {
  return (f(s + h) - f(s - h)) / (2 * h);
}

}  // namespace

TEST_CASE("arc length of closed-form curves") {
  CHECK(Curve(ParamCurve::arc(Vec3d::Zero(), 1.0, Vec3d::UnitX(), Vec3d::UnitY(), 0.0, pi / 2)).length() ==
        doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(Curve(ParamCurve::line(Vec3d::Zero(), Vec3d(3, 4, 0))).length() == doctest::Approx(5.0).epsilon(1e-15));

  // Helix a = b = 1, one turn: closed form against an independent quadrature of |r'|.
  const ParamCurve helix = ParamCurve::helix(1.0, 1.0, 0.0, 2 * pi);
  const double closed = 2 * pi * std::sqrt(2.0);
  const double numeric = integrate([&](double xi) { return helix.jet(xi).d1.norm(); }, 0.0, 1.0, 20);
  CHECK(std::abs(numeric - closed) / closed <= 1e-10);
  CHECK(std::abs(Curve(helix).length() - closed) / closed <= 1e-10);
}

TEST_CASE("arc-length chart inverts on a spline") {
  const Curve c(ParamCurve::hermite_clamped({Vec3d(0, 0, 0), Vec3d(1, 1, 0), Vec3d(2, 0, 1), Vec3d(3, 0.5, 1)},
                                            Vec3d(1, 0, 0), Vec3d(0, 1, 1)));
  for (double s : {0.0, 0.3, 1.7, c.length() * 0.9, c.length()})
    CHECK(c.arc_length(c.parameter(s)) == doctest::Approx(s).epsilon(1e-12));
  CHECK(c.breakpoints().size() == 4);
}

TEST_CASE("curvature vector") {
  const Curve arc(ParamCurve::arc(Vec3d(1, 2, 3), 2.0, Vec3d::UnitX(), Vec3d::UnitZ(), 0.3, 2.0));
  for (double w : {0.0, 0.25, 0.5, 1.0}) {
    const FrameSample f = eval_frame(arc, w * arc.length());
    CHECK(f.kappa.norm() == doctest::Approx(0.5).epsilon(1e-12));
    // points toward the centre
    CHECK((Vec3d(1, 2, 3) - f.x).normalized().dot(f.kappa.normalized()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.t.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }

  const Curve line(ParamCurve::line(Vec3d(1, 1, 1), Vec3d(2, 3, 4)));
  CHECK(eval_frame(line, 0.7).kappa.norm() == 0.0);

  // Helix a = b = 1: |kappa| = a / (a^2 + b^2), and kappa = dt/ds by finite differences.
  const Curve helix(ParamCurve::helix(1.0, 1.0, 0.0, 2 * pi));
  for (double s : {0.5, 2.0, 6.0}) {
    const FrameSample f = eval_frame(helix, s);
    CHECK(f.kappa.norm() == doctest::Approx(0.5).epsilon(1e-12));
    const Vec3d fd = central([&](double x) { return eval_frame(helix, x).t; }, s, 1e-4);
    CHECK((fd - f.kappa).norm() <= 1e-6);
  }
}

TEST_CASE("Frenet frame and torsion") {
  const Curve arc(ParamCurve::arc(Vec3d::Zero(), 1.5, Vec3d(1, 1, 0).normalized(), Vec3d::UnitZ(), 0.0, 2.0));
  for (double s : {0.1, 1.0, 2.5}) CHECK(std::abs(frenet(arc, s).tau) <= 1e-8);

  const Curve helix(ParamCurve::helix(1.0, 1.0, 0.0, 2 * pi));
  for (double s : {1.0, 4.0}) {
    const FrenetFrame F = frenet(helix, s);
    CHECK(F.tau == doctest::Approx(0.5).epsilon(1e-12));
    // db/ds = -tau n
    const Vec3d db = central([&](double x) { return frenet(helix, x).b; }, s, 1e-4);
    CHECK((db + F.tau * F.n).norm() <= 1e-6);
    CHECK(F.t.cross(F.n).dot(F.b) == doctest::Approx(1.0).epsilon(1e-14));
  }

  const Curve line(ParamCurve::line(Vec3d::Zero(), Vec3d(1, 0, 0)));
  CHECK_THROWS_AS(frenet(line, 0.5), ZeroCurvatureError);
}

TEST_CASE("closest point and the section coordinate") {
  const Curve circle(ParamCurve::arc(Vec3d::Zero(), 1.0, Vec3d::UnitX(), Vec3d::UnitY(), -pi / 2, pi / 2));
  const ClosestPointResult on = closest_point(circle, eval_frame(circle, 0.4).x);
  CHECK(on.zeta.norm() <= 1e-12);
  CHECK(on.s == doctest::Approx(0.4).epsilon(1e-10));

  const ClosestPointResult r = closest_point(circle, Vec3d(1.5, 0, 0));
  CHECK((r.p - Vec3d(1, 0, 0)).norm() <= 1e-12);
  CHECK((r.zeta - Vec3d(0.5, 0, 0)).norm() <= 1e-12);
  // every point of the arc is equally far from its centre
  CHECK_THROWS_AS(closest_point(circle, Vec3d::Zero()), AmbiguityError);

  // zeta is constant along t and has unit derivative along normal directions.
  const Curve helix(ParamCurve::helix(1.0, 0.3, 0.0, 3.0));
  const double h = 1e-4;
  for (double s : {0.8, 1.6, 2.4}) {
    const FrameSample f = eval_frame(helix, s);
    const auto zeta = [&](const Vec3d& x) { return closest_point(helix, x).zeta; };
    CHECK(((zeta(f.x + h * f.t) - zeta(f.x - h * f.t)) / (2 * h)).norm() <= 1e-6);
    const auto [n1, n2] = normal_basis(f.t);
    for (const Vec3d& n : {n1, n2})
      CHECK(((zeta(f.x + h * n) - zeta(f.x - h * n)) / (2 * h) - n).norm() <= 1e-6);
  }
}

TEST_CASE("invalid curves") {
  CHECK_THROWS_AS(Curve(ParamCurve::line(Vec3d::Ones(), Vec3d::Ones())), DegenerateCurveError);
  CHECK_THROWS_AS(eval_frame(Curve(ParamCurve::line(Vec3d::Zero(), Vec3d::UnitX())), 1.5), DomainError);
}
