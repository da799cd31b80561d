#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"

#include "cbeam/benchmarks.hpp"
#include "cbeam/errors.hpp"
#include "cbeam/postprocess.hpp"

using namespace cbeam;

namespace {

ConvergenceGroup synthetic(const std::vector<int>& n, const std::vector<double>& e) {
  ConvergenceGroup g{FormulationKind::TimoshenkoH3P2, QuadraturePolicy::Reduced, 0.1, 1.0, {}, {}, std::nullopt};
  for (std::size_t i = 0; i < n.size(); ++i) {
    ConvergenceRow r;
    r.n_elem = n[i];
    r.error = e[i];
    r.solved = true;
    g.rows.push_back(r);
  }
  return g;
}

StudySpec straight_study() {
  StudySpec s;
  s.formulations = {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2};
  s.policies = {QuadraturePolicy::Reduced};
  s.elements = {1, 2, 4, 8};
  s.thickness = {0.1, 0.01, 0.001};
  return s;
}

}  // namespace

TEST_CASE("analytic straight cantilever") {
  CHECK(analytic_straight_tip(0.0, 1e6, 0.3, 0.1, 10.0) == 0.0);
  // frozen: P = 1, E = 1e6, nu = 0.3, t = 0.1, L = 10
  CHECK(analytic_straight_tip(1.0, 1e6, 0.3, 0.1, 10.0) == doctest::Approx(-4.000275).epsilon(1e-14));
  // nu = 0: -4 P L^3 / (E t^3) - 2 P L / (E t); the first term dominates as t -> 0
  for (double t : {0.3, 0.05, 0.001}) {
    const double P = 2.5, E = 3e5, L = 4.0;
    const double expect = -4 * P * L * L * L / (E * t * t * t) - 2 * P * L / (E * t);
    CHECK(analytic_straight_tip(P, E, 0.0, t, L) == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK(analytic_straight_tip(2.0, 1e6, 0.3, 0.1, 10.0) == doctest::Approx(2 * analytic_straight_tip(1.0, 1e6, 0.3, 0.1, 10.0)).epsilon(1e-15));
  CHECK_THROWS_AS(analytic_straight_tip(1.0, 1e6, 0.3, 0.0, 10.0), ValidationError);
}

TEST_CASE("analytic quarter ring") {
  CHECK(analytic_quarter_arc_tip(1.0, 1e6, 0.95, 1.05) == doctest::Approx(-0.009438885822063383332300005).epsilon(1e-13));
  CHECK(analytic_quarter_arc_tip(1.0, 1e6, 0.9995, 1.0005) == doctest::Approx(-9424.779374488894958608913).epsilon(1e-13));
  CHECK(analytic_quarter_arc_tip(0.0, 1e6, 0.9, 1.1) == 0.0);
  CHECK(analytic_quarter_arc_tip(-3.0, 1e6, 0.9, 1.1) == doctest::Approx(-3 * analytic_quarter_arc_tip(1.0, 1e6, 0.9, 1.1)).epsilon(1e-15));

  // Thin-ring limit: pi P R^3 / (4 E I) with I = t^3 / 12, corrections O((t/R)^2).
  for (double t : {1e-2, 1e-3}) {
    const double thin = -std::numbers::pi / (4 * 1e6 * t * t * t / 12);
    CHECK(std::abs(analytic_quarter_arc_tip(1.0, 1e6, 1 - t / 2, 1 + t / 2) / thin - 1) <= t * t);
  }
  // The series branch joins the closed form smoothly at (b - a)/a = 0.1.
  const double a = 1.0;
  const double lo = analytic_quarter_arc_tip(1.0, 1.0, a, a * (1 + 0.1 - 1e-9));
  const double hi = analytic_quarter_arc_tip(1.0, 1.0, a, a * (1 + 0.1 + 1e-9));
  CHECK(std::abs(hi / lo - 1) <= 1e-7);

  CHECK_THROWS_AS(analytic_quarter_arc_tip(1.0, 1e6, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(analytic_quarter_arc_tip(1.0, 1e6, 1.1, 1.0), ValidationError);
  CHECK_THROWS_AS(analytic_quarter_arc_tip(1.0, 1e6, 0.0, 1.0), ValidationError);
}

TEST_CASE("benchmark models") {
  BenchmarkSetup s;
  const BeamModel m = benchmark_model(s, 0.1);
  CHECK(m.curve.length() == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(m.loads.end.force == Vec3d(0, -1, 0));
  s.benchmark = Benchmark::QuarterArc;
  const BeamModel q = benchmark_model(s, 0.1);
  CHECK((eval_frame(q.curve, 0.0).x - Vec3d(0, 1, 0)).norm() <= 1e-15);
  CHECK((eval_frame(q.curve, q.curve.length()).x - Vec3d(1, 0, 0)).norm() <= 1e-15);
  CHECK(analytic_reference(s, 0.1) == analytic_quarter_arc_tip(1.0, 1e6, 0.95, 1.05));
  CHECK_THROWS_AS(benchmark_model(s, 2.5), ValidationError);
  CHECK(benchmark_from_string("quarter_arc") == Benchmark::QuarterArc);
  CHECK_FALSE(benchmark_from_string("ring").has_value());
}

TEST_CASE("study validation") {
  StudySpec s = straight_study();
  CHECK_NOTHROW(validate(s));
  auto bad = s;
  bad.elements = {};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.elements = {1, 4, 4};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.thickness = {0.1, -0.1};
  CHECK_THROWS_AS(validate(bad), ValidationError);
  bad = s;
  bad.formulations = {};
  CHECK_THROWS_AS(run_convergence(bad), ValidationError);
}

TEST_CASE("order fit") {
  SUBCASE("clean power law") {
    ConvergenceGroup g = synthetic({1, 2, 4, 8}, {3.0, 0.75, 0.1875, 0.046875});
    fit_order(g);
    REQUIRE(g.order.has_value());
    CHECK(*g.order == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(g.pair_orders.size() == 3);
    for (double p : g.pair_orders) CHECK(p == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& r : g.rows) CHECK_FALSE(r.plateau);
  }
  SUBCASE("plateau rows are excluded") {
    // e = n^-4 down to n = 4, then a floor that no longer drops by 20%
    ConvergenceGroup g = synthetic({1, 2, 4, 8, 16}, {1.0, 0.0625, 0.00390625, 0.0035, 0.0034});
    fit_order(g);
    REQUIRE(g.order.has_value());
    CHECK(*g.order == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_FALSE(g.rows[2].plateau);
    CHECK(g.rows[3].plateau);
    CHECK(g.rows[4].plateau);
  }
  SUBCASE("too few points") {
    ConvergenceGroup g = synthetic({1, 2}, {1.0, 0.25});
    fit_order(g);
    CHECK_FALSE(g.order.has_value());
    ConvergenceGroup p = synthetic({1, 2, 4}, {1.0, 0.25, 0.25});
    fit_order(p);
    CHECK_FALSE(p.order.has_value());
    CHECK(p.rows[2].plateau);
  }
}

TEST_CASE("straight convergence study") {
  const ConvergenceReport r = run_convergence(straight_study());
  CHECK(r.groups.size() == 6);
  for (const auto& g : r.groups) {
    CHECK(g.reference == analytic_straight_tip(1.0, 1e6, 0.3, g.t, 10.0));
    for (const auto& row : g.rows) {
      REQUIRE(row.solved);
      CHECK(row.error == doctest::Approx(std::abs(row.qoi - g.reference)).epsilon(1e-15));
    }
  }
  // Quadratic midline with a linear angle: tip error 1/(4 n^2) of the bending part,
  // independent of the thickness (no shear locking).
  const auto* p2 = r.find(FormulationKind::TimoshenkoP2P1, QuadraturePolicy::Reduced, 0.001);
  REQUIRE(p2 != nullptr);
  REQUIRE(p2->order.has_value());
  CHECK(*p2->order == doctest::Approx(2.0).epsilon(1e-3));
  for (const auto& row : p2->rows) CHECK(row.rel_error == doctest::Approx(0.25 / (row.n_elem * row.n_elem)).epsilon(1e-3));
  // The cubic element is exact for this load; what remains is the shear-correction
  // modelling error, which scales as t^2 / L^2.
  const auto* h3 = r.find(FormulationKind::TimoshenkoH3P2, QuadraturePolicy::Reduced, 0.1);
  REQUIRE(h3 != nullptr);
  for (const auto& row : h3->rows) CHECK(row.rel_error == doctest::Approx(h3->rows.front().rel_error).epsilon(1e-6));
}

TEST_CASE("reduced and full integration agree on a straight beam") {
  BenchmarkSetup s;
  const BeamModel m = benchmark_model(s, 0.1);
  for (auto k : {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2}) {
    const double full = tip_displacement(solve_model(m, Discretization::uniform(10.0, k, 16, QuadraturePolicy::Full)))[1];
    const double red = tip_displacement(solve_model(m, Discretization::uniform(10.0, k, 16, QuadraturePolicy::Reduced)))[1];
    CHECK(std::abs(full - red) <= 1e-10 * std::abs(red));
  }
}

TEST_CASE("locking study") {
  SUBCASE("thin quarter arc") {
    StudySpec s;
    s.setup.benchmark = Benchmark::QuarterArc;
    s.formulations = {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2};
    s.policies = {QuadraturePolicy::Reduced};
    s.elements = {2, 4, 8};
    s.thickness = {0.001};
    const LockingReport r = run_locking_study(s);
    REQUIRE(r.entries.size() == 6);
    CHECK(r.thickness_ratios.empty());
    for (const auto& e : r.entries) {
      CHECK(e.ratio == doctest::Approx(e.rel_error_full / e.rel_error_reduced));
      CHECK(e.ratio > 10.0);  // full integration locks at t/R = 1e-3
    }
  }
  SUBCASE("straight beam thickness ratios") {
    const LockingReport r = run_locking_study(straight_study());
    CHECK(r.thickness_ratios.size() == 2u * 2u * 3u * 4u);
    for (const auto& e : r.entries) CHECK(e.ratio == doctest::Approx(1.0).epsilon(0.5));
    for (const auto& tr : r.thickness_ratios)
      if (tr.formulation == FormulationKind::TimoshenkoP2P1) CHECK(tr.ratio == doctest::Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("demo configurations") {
  const auto demos = demo_configs();
  std::set<std::string> names;
  for (const auto& d : demos) {
    names.insert(d.name);
    CHECK_FALSE(d.description.empty());
    CHECK(d.elements > 0);
  }
  CHECK(names == std::set<std::string>{"s_curve_torque", "s_curve_out_of_plane", "helix_push", "helix_pull", "straight_torque"});
}
