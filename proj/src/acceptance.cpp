#include "cbeam/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "cbeam/benchmarks.hpp"
#include "cbeam/errors.hpp"
#include "cbeam/postprocess.hpp"

namespace cbeam {
namespace {

constexpr FormulationKind kAllFormulations[] = {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2,
                                                FormulationKind::EulerBernoulliH3};
constexpr QuadraturePolicy kAllPolicies[] = {QuadraturePolicy::Reduced, QuadraturePolicy::Full};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string tag(FormulationKind f, QuadraturePolicy p) {
  return std::string(to_string(f)) + "/" + std::string(to_string(p));
}

// Collects the individual checks of one criterion. Failed checks are listed first
// in the detail line.
class Checks {
 public:
  explicit Checks(double scale) : scale_(scale) {}

  double scale() const { return scale_; }
  double tol(double base) const { return base * scale_; }
  // A lower bound that grows as the tolerance shrinks; unreachable at scale 0.
  double floor(double base) const { return scale_ > 0 ? base / scale_ : std::numeric_limits<double>::infinity(); }

  void expect(bool ok, const std::string& what) { (ok ? passed_ : failed_).push_back(what); }

  bool ok() const { return failed_.empty() && !passed_.empty(); }

  std::string detail() const {
    std::string out;
    auto add = [&](const std::vector<std::string>& v, const char* prefix) {
      for (const auto& s : v) {
        if (!out.empty()) out += "; ";
        out += prefix + s;
      }
    };
    add(failed_, "FAILED ");
    add(passed_, "");
    return out;
  }

 private:
  double scale_;
  std::vector<std::string> passed_;
  std::vector<std::string> failed_;
};

SolvedModel solve_with(const BeamModel& m, FormulationKind f, int n, QuadraturePolicy p) {
  return solve_model(m, Discretization::uniform(m.curve.length(), f, n, p));
}

const DemoConfig& demo(const std::vector<DemoConfig>& all, const std::string& name) {
  for (const auto& d : all)
    if (d.name == name) return d;
  throw ValidationError("unknown demo " + name);
}

SolvedModel solve_demo(const DemoConfig& d) { return solve_with(d.model, d.formulation, d.elements, d.policy); }

// ---------------------------------------------------------------------------

void straight_cantilever_order(Checks& c) {
  StudySpec st;
  st.formulations = {FormulationKind::TimoshenkoP2P1};
  st.policies = {QuadraturePolicy::Reduced, QuadraturePolicy::Full};
  st.elements = {1, 2, 4, 8, 16, 32};
  st.thickness = {0.1};
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceReport rep = run_convergence(st);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& g : rep.groups) {
    const bool ok = g.order && std::abs(*g.order - 2.0) <= c.tol(0.2);
    c.expect(ok, tag(g.formulation, g.policy) + " order " + (g.order ? num(*g.order) : "none") + " (2 +- 0.2)");
  }
  c.expect(secs < c.tol(5.0), "runtime " + num(secs) + " s (< 5 s)");
}

void h3p2_single_element(Checks& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const BenchmarkSetup setup;
  const double t = 0.1;
  const BeamModel m = benchmark_model(setup, t);
  const double ref = analytic_reference(setup, t);
  const int comp = qoi_component(setup.benchmark);
  const double e1 = std::abs(tip_displacement(solve_with(m, FormulationKind::TimoshenkoH3P2, 1, QuadraturePolicy::Reduced))[comp] - ref);
  const double e32 = std::abs(tip_displacement(solve_with(m, FormulationKind::TimoshenkoP2P1, 32, QuadraturePolicy::Reduced))[comp] - ref);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(e1 <= c.scale() * e32, "H3-P2 1 element error " + num(e1) + " <= P2-P1 32 elements error " + num(e32));
  c.expect(secs < c.tol(1.0), "runtime " + num(secs) + " s (< 1 s)");
}

void quarter_arc_orders(Checks& c) {
  StudySpec st;
  st.setup.benchmark = Benchmark::QuarterArc;
  st.formulations = {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2};
  st.policies = {QuadraturePolicy::Reduced};
  st.elements = {1, 2, 4, 8, 16, 32, 64};
  st.thickness = {0.1, 0.001};
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceReport rep = run_convergence(st);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& g : rep.groups) {
    const bool p2 = g.formulation == FormulationKind::TimoshenkoP2P1;
    const double target = p2 ? 2.0 : 4.0, band = p2 ? 0.2 : 0.3;
    int pre = 0;
    for (const auto& r : g.rows) pre += r.solved && !r.plateau;
    const bool ok = g.order && std::abs(*g.order - target) <= c.tol(band);
    c.expect(ok, std::string(to_string(g.formulation)) + " t=" + num(g.t) + " order " +
                     (g.order ? num(*g.order) : "none (" + std::to_string(pre) + " pre-plateau meshes)") + " (" +
                     num(target) + " +- " + num(band) + ")");
  }
  c.expect(secs < c.tol(10.0), "runtime " + num(secs) + " s (< 10 s)");
}

void quarter_arc_locking(Checks& c) {
  BenchmarkSetup setup;
  setup.benchmark = Benchmark::QuarterArc;
  const double t = 0.001;
  const BeamModel m = benchmark_model(setup, t);
  const double ref = analytic_reference(setup, t);
  for (FormulationKind f : {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2}) {
    const double full = std::abs(tip_displacement(solve_with(m, f, 8, QuadraturePolicy::Full))[0] - ref);
    const double red = std::abs(tip_displacement(solve_with(m, f, 8, QuadraturePolicy::Reduced))[0] - ref);
    const double ratio = full / red;
    c.expect(ratio >= c.floor(10.0), std::string(to_string(f)) + " full/reduced error ratio " + num(ratio) + " (>= 10)");
  }
}

void straight_no_locking(Checks& c) {
  StudySpec st;
  st.formulations = {FormulationKind::TimoshenkoP2P1};
  st.policies = {QuadraturePolicy::Reduced, QuadraturePolicy::Full};
  st.elements = {1, 2, 4, 8, 16, 32};
  st.thickness = {0.1, 0.001};
  const ConvergenceReport rep = run_convergence(st);
  const double factor = 1.0 + c.tol(1.0);
  for (QuadraturePolicy p : st.policies) {
    const auto* thick = rep.find(FormulationKind::TimoshenkoP2P1, p, 0.1);
    const auto* thin = rep.find(FormulationKind::TimoshenkoP2P1, p, 0.001);
    double worst = 1.0;
    bool ok = true;
    for (std::size_t i = 0; i < st.elements.size(); ++i) {
      const auto& a = thick->rows[i];
      const auto& b = thin->rows[i];
      if (!a.solved || !b.solved) {
        ok = false;
        continue;
      }
      const double r = b.rel_error / a.rel_error;
      const double off = std::max(r, 1.0 / r);
      worst = std::max(worst, off);
      ok = ok && off <= factor;
    }
    c.expect(ok, tag(FormulationKind::TimoshenkoP2P1, p) + " worst ratio of relative errors " + num(worst) +
                     " across meshes 1..32 (within a factor 2)");
  }
}

void resultant_forms(Checks& c) {
  const auto demos = demo_configs();
  BenchmarkSetup arc;
  arc.benchmark = Benchmark::QuarterArc;
  struct Case {
    std::string name;
    BeamModel model;
    int elements;
  };
  const std::vector<Case> cases = {{"straight", benchmark_model(BenchmarkSetup{}, 0.1), 8},
                                   {"quarter_arc", benchmark_model(arc, 0.1), 8},
                                   {"helix", demo(demos, "helix_pull").model, 96}};
  for (const auto& cs : cases)
    for (FormulationKind f : kAllFormulations) {
      const SolvedModel sol = solve_with(cs.model, f, cs.elements, QuadraturePolicy::Reduced);
      std::vector<double> s = sample_points(sol, SampleLocation::QuadraturePoints);
      const auto uni = sample_points(sol, SampleLocation::Uniform, 11);
      s.insert(s.end(), uni.begin(), uni.end());
      std::vector<Resultants> plain, sep;
      for (double si : s) {
        plain.push_back(resultants(sol, si));
        sep.push_back(resultants_curvature_form(sol, si));
      }
      double worst = 0.0;
      auto compare = [&](Vec3d Resultants::*field) {
        double ref = 0.0, diff = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) {
          ref = std::max(ref, (plain[k].*field).norm());
          diff = std::max(diff, (plain[k].*field - sep[k].*field).norm());
        }
        worst = std::max(worst, ref > 0 ? diff / ref : diff);
      };
      compare(&Resultants::N);
      compare(&Resultants::S);
      compare(&Resultants::M);
      compare(&Resultants::T);
      c.expect(worst <= c.tol(1e-10), cs.name + " " + std::string(to_string(f)) + " max relative difference " +
                                          num(worst) + " over " + std::to_string(s.size()) + " samples (<= 1e-10)");
    }
}

void geometry_identities(Checks& c) {
  using std::numbers::pi;
  const std::vector<std::pair<std::string, Curve>> curves = {
      {"helix", Curve(ParamCurve::helix(1.0, 0.1, 0.0, 4 * pi))},
      {"steep helix", Curve(ParamCurve::helix(0.5, 0.8, 0.3, 5.0))},
      {"tilted arc", Curve(ParamCurve::arc(Vec3d(1, -2, 0.5), 1.7, Vec3d(1, 1, 0).normalized(),
                                           Vec3d(-1, 1, 1).normalized(), 0.2, 2.5))},
      {"spline", Curve(ParamCurve::hermite_clamped(
                     {Vec3d(0, 0, 0), Vec3d(1, 0.5, 0.2), Vec3d(2, 0.3, 0.8), Vec3d(2.5, -0.6, 1.2), Vec3d(3.2, -0.5, 1.0)},
                     Vec3d(1, 1, 0), Vec3d(1, 0, -0.5)))},
  };
  const double h = 1e-3;
  for (const auto& [name, curve] : curves) {
    const double L = curve.length();
    const auto knots = curve.breakpoints();
    double fs_err = 0.0, dt_err = 0.0, dn_err = 0.0;
    int samples = 0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k)
      for (double w : {0.25, 0.5, 0.75}) {
        const double s = knots[k] + w * (knots[k + 1] - knots[k]);
        if (s - 2 * h <= 0 || s + 2 * h >= L) continue;
        ++samples;
        const FrenetFrame F = frenet(curve, s);
        // Five-point stencil: the spline twists fast enough that O(h^2) truncation shows.
        const auto d5 = [h](auto&& f, const Vec3d& dir) -> Vec3d {
          return (f(-2 * h, dir) - 8 * f(-h, dir) + 8 * f(h, dir) - f(2 * h, dir)) / (12 * h);
        };
        const auto tt = [&](double ds, const Vec3d&) { return frenet(curve, s + ds).t; };
        const auto nn = [&](double ds, const Vec3d&) { return frenet(curve, s + ds).n; };
        const auto bb = [&](double ds, const Vec3d&) { return frenet(curve, s + ds).b; };
        const Vec3d dt = d5(tt, F.t), dn = d5(nn, F.t), db = d5(bb, F.t);
        fs_err = std::max({fs_err, (dt - F.kappa * F.n).norm(), (dn + F.kappa * F.t - F.tau * F.b).norm(),
                           (db + F.tau * F.n).norm()});

        const Vec3d x = eval_frame(curve, s).x;
        const auto zeta = [&](double dx, const Vec3d& dir) { return closest_point(curve, Vec3d(x + dx * dir)).zeta; };
        dt_err = std::max(dt_err, d5(zeta, F.t).norm());
        const auto [n1, n2] = normal_basis(F.t);
        for (const Vec3d& n : {n1, n2, F.n}) dn_err = std::max(dn_err, (d5(zeta, n) - n).norm());
      }
    c.expect(fs_err <= c.tol(1e-6), name + " Frenet-Serret FD residual " + num(fs_err) + " (<= 1e-6)");
    c.expect(dt_err <= c.tol(1e-6), name + " |(t.grad) zeta| " + num(dt_err) + " (<= 1e-6)");
    c.expect(dn_err <= c.tol(1e-6), name + " |(n.grad) zeta - n| " + num(dn_err) + " over " + std::to_string(samples) +
                                        " points (<= 1e-6)");
  }
  for (auto [a, b] : {std::pair{1.0, 0.1}, std::pair{0.5, 0.8}, std::pair{2.0, -0.3}}) {
    const Curve helix(ParamCurve::helix(a, b, 0.0, 3.0));
    double err = 0.0;
    for (double w : {0.1, 0.5, 0.9}) {
      const FrenetFrame F = frenet(helix, w * helix.length());
      err = std::max({err, std::abs(F.kappa - a / (a * a + b * b)), std::abs(F.tau - b / (a * a + b * b))});
    }
    c.expect(err <= c.tol(1e-8), "helix a=" + num(a) + " b=" + num(b) + " curvature/torsion error " + num(err) + " (<= 1e-8)");
  }
}

// |x^T K x| / (|K|_1 |x|^2)
double scaled_energy(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& x) {
  double norm1 = 0.0;
  for (int k = 0; k < K.outerSize(); ++k) {
    double col = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, k); it; ++it) col += std::abs(it.value());
    norm1 = std::max(norm1, col);
  }
  return std::abs(x.dot(K * x)) / (norm1 * x.squaredNorm());
}

void mechanics_properties(Checks& c) {
  using std::numbers::pi;
  const Material mat = Material::from_E_nu(1e6, 0.3);
  const CrossSection circ = section_from_shape(CircleShape{0.1});
  const Vec3d d = Vec3d(1, 2, 2) / 3.0;
  const double L = 2.0;
  const BeamModel helix{Curve(ParamCurve::helix(1.0, 0.1, 0.0, 4 * pi)), mat, circ};
  const BeamModel line{Curve(ParamCurve::line(Vec3d(0.3, -0.2, 0.1), Vec3d(0.3, -0.2, 0.1) + L * d)), mat, circ};

  // Rigid motions: translations on a helix, rotations on a tilted line (the
  // interpolant of a rotation is only exact where the midline is straight).
  for (FormulationKind f : kAllFormulations)
    for (QuadraturePolicy p : kAllPolicies) {
      double worst = 0.0;
      const Discretization dh = Discretization::uniform(helix.curve.length(), f, 16, p);
      const auto Kh = assemble_stiffness<double>(helix, dh);
      for (int k = 0; k < 3; ++k) {
        const Vec3d e = Vec3d::Unit(k);
        const Eigen::VectorXd x = interpolate(helix.curve, dh, {[e](double) { return e; },
                                                                 [](double) { return Vec3d::Zero(); },
                                                                 [](double) { return Vec3d::Zero(); }});
        worst = std::max(worst, scaled_energy(Kh, x));
      }
      const Discretization dl = Discretization::uniform(L, f, 4, p);
      const auto Kl = assemble_stiffness<double>(line, dl);
      for (int k = 0; k < 3; ++k) {
        const Vec3d w = Vec3d::Unit(k);
        const Curve& cl = line.curve;
        const Eigen::VectorXd x =
            interpolate(cl, dl, {[&](double s) { return Vec3d(w.cross(eval_frame(cl, s).x)); },
                                 [&](double s) { return Vec3d(w.cross(eval_frame(cl, s).t)); },
                                 [w](double) { return w; }});
        worst = std::max(worst, scaled_energy(Kl, x));
      }
      c.expect(worst <= c.tol(1e-12), tag(f, p) + " rigid-motion energy " + num(worst) + " (<= 1e-12)");

      Eigen::SparseMatrix<double> asym = Kh - Eigen::SparseMatrix<double>(Kh.transpose());
      const double a = asym.coeffs().size() ? asym.coeffs().cwiseAbs().maxCoeff() : 0.0;
      const double kmax = Kh.coeffs().cwiseAbs().maxCoeff();
      c.expect(a <= c.tol(1e-12) * kmax, tag(f, p) + " K asymmetry " + num(a / kmax) + " (<= 1e-12)");
    }

  // Patch tests on the tilted line, clamped at s = 0.
  const Vec3d n = normal_basis(d).first;
  const double EA = mat.E * circ.area, GA = mat.G * circ.area, GJ = mat.G * circ.polar;
  const double EI = mat.E * std::get<IsotropicInertia>(circ.inertia).I;
  auto rel = [](const Vec3d& a, const Vec3d& b) { return (a - b).norm() / b.norm(); };
  for (FormulationKind f : kAllFormulations)
    for (QuadraturePolicy p : kAllPolicies) {
      const bool eb = f == FormulationKind::EulerBernoulliH3;
      double axial = 0.0, torsion = 0.0, shear = 0.0;
      {
        BeamModel m = line;
        const double F = 0.5;
        m.loads.end.force = F * d;
        const SolvedModel sol = solve_with(m, f, 4, p);
        axial = std::max(axial, rel(tip_displacement(sol), F * L / EA * d));
        for (double s : sample_points(sol, SampleLocation::QuadraturePoints))
          axial = std::max(axial, rel(resultants(sol, s).N, F * d));
      }
      {
        BeamModel m = line;
        const double T = 0.02;
        m.loads.end.moment = T * d;
        const SolvedModel sol = solve_with(m, f, 4, p);
        torsion = std::max(torsion, rel(evaluate(sol, L).theta.cast<double>(), T * L / GJ * d));
        for (double s : sample_points(sol, SampleLocation::QuadraturePoints)) {
          const Resultants r = resultants(sol, s);
          torsion = std::max({torsion, rel(r.T, T * d), r.M.norm() / T});
        }
      }
      if (f != FormulationKind::TimoshenkoP2P1) {
        // Constant shear with a linear moment: exact for a cubic midline.
        BeamModel m = line;
        const double F = 0.3;
        m.loads.end.force = F * n;
        const SolvedModel sol = solve_with(m, f, 4, p);
        const double tip = F * L * L * L / (3 * EI) + (eb ? 0.0 : F * L / GA);
        shear = std::max(shear, rel(tip_displacement(sol), tip * n));
        if (!eb)
          for (double s : sample_points(sol, SampleLocation::Uniform, 9))
            shear = std::max(shear, rel(resultants(sol, s).S, F * n));
      }
      c.expect(std::max({axial, torsion, shear}) <= c.tol(1e-8),
               tag(f, p) + " patch errors axial " + num(axial) + ", torsion " + num(torsion) +
                   (f != FormulationKind::TimoshenkoP2P1 ? ", shear " + num(shear) : std::string()) + " (<= 1e-8)");
    }

  // Equilibrium of reactions and energy consistency. Force balance is exact on any
  // mesh. Moment balance is exact only where the interpolant of a rigid rotation
  // lies in the space (straight midlines); on curved midlines it carries an
  // interpolation error that decays with the mesh, so those cases are refined
  // until that error is well below the tolerance.
  const auto demos = demo_configs();
  BenchmarkSetup arc_setup;
  arc_setup.benchmark = Benchmark::QuarterArc;
  BeamModel arc_body = benchmark_model(arc_setup, 0.1);
  arc_body.loads.body = [](double s) { return Vec3d(0.2 * s, -1.0, 0.5); };
  BeamModel line_body = line;
  line_body.loads.body = [](double s) { return Vec3d(0.3 * s * s, -0.5, 0.2 - s); };
  line_body.loads.end.force = Vec3d(0.1, 0.2, -0.3);
  line_body.loads.end.moment = Vec3d(0.01, -0.02, 0.005);
  // Energy consistency is mesh independent but the finest meshes here are
  // conditioned badly enough (cond ~ 1e12) that it is checked on the coarse one.
  struct Case {
    std::string name;
    BeamModel model;
    int coarse;
    std::array<int, 3> fine;  // per formulation, in kAllFormulations order
  };
  const std::vector<Case> cases = {{"tilted_line+body", line_body, 4, {4, 4, 4}},
                                   {"quarter_arc+body", arc_body, 8, {32, 32, 32}},
                                   {"s_curve_torque", demo(demos, "s_curve_torque").model, 32, {32, 32, 256}},
                                   {"s_curve_out_of_plane", demo(demos, "s_curve_out_of_plane").model, 32, {128, 128, 256}},
                                   {"helix_push", demo(demos, "helix_push").model, 96, {96, 96, 1024}}};
  for (const auto& cs : cases)
    for (std::size_t fi = 0; fi < std::size(kAllFormulations); ++fi)
      for (const bool fine : {false, true}) {
        const FormulationKind f = kAllFormulations[fi];
        const int ne = fine ? cs.fine[fi] : cs.coarse;
        if (fine && ne == cs.coarse) continue;
        const std::string label = cs.name + " " + std::string(to_string(f)) + " n=" + std::to_string(ne);
        const SolvedModel sol = solve_with(cs.model, f, ne, QuadraturePolicy::Reduced);
        const Reactions r = reactions(sol);
        const EndReaction app = applied_load(sol);
        const Vec3d x0 = eval_frame(sol.model.curve, 0.0).x;
        const Vec3d x1 = eval_frame(sol.model.curve, sol.model.curve.length()).x;
        const Vec3d fsum = r.start.force + r.end.force + app.force;
        const Vec3d msum = r.start.moment + x0.cross(r.start.force) + r.end.moment + x1.cross(r.end.force) + app.moment;
        // Reference magnitudes from the applied load alone, moments about the start.
        const double span = std::max((x1 - x0).norm(), 1e-12);
        const double fa = app.force.norm(), ma = (app.moment - x0.cross(app.force)).norm();
        const double fref = fa + ma / span, mref = ma + span * fa;
        const double fe = fsum.norm() / fref, me = msum.norm() / mref;
        c.expect(fe <= c.tol(1e-8), label + " force balance " + num(fe) + " (<= 1e-8)");
        const bool straight = cs.name == "tilted_line+body";
        if (fine || straight) c.expect(me <= c.tol(1e-8), label + " moment balance " + num(me) + " (<= 1e-8)");
        if (fine) continue;

        const auto& u = sol.fields.coefficients;
        const double a = 2 * strain_energy(sol);
        const double l = double(u.dot(sol.system.rhs));
        const double ec = std::abs(a - l) / std::abs(l);
        c.expect(ec <= c.tol(1e-10), label + " |a(u,u) - l(u)| / |l(u)| " + num(ec) + " (<= 1e-10)");
      }
}

void timoshenko_eb_limit(Checks& c) {
  const BenchmarkSetup setup;
  const std::vector<double> ts = {0.1, 0.03, 0.01, 0.003, 0.001};
  std::vector<double> gaps;
  for (double t : ts) {
    const BeamModel m = benchmark_model(setup, t);
    const double ut = tip_displacement(solve_with(m, FormulationKind::TimoshenkoH3P2, 4, QuadraturePolicy::Reduced))[1];
    const double ue = tip_displacement(solve_with(m, FormulationKind::EulerBernoulliH3, 4, QuadraturePolicy::Reduced))[1];
    gaps.push_back(std::abs(ut - ue) / std::abs(ue));
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    mx += std::log(ts[k]) / ts.size();
    my += std::log(gaps[k]) / ts.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    sxy += (std::log(ts[k]) - mx) * (std::log(gaps[k]) - my);
    sxx += (std::log(ts[k]) - mx) * (std::log(ts[k]) - mx);
  }
  const double slope = sxy / sxx;
  c.expect(std::abs(slope - 2.0) <= c.tol(0.2), "log-log slope of the relative gap " + num(slope) + " (2 +- 0.2)");
  c.expect(gaps.back() < c.tol(1e-4), "relative gap at t=0.001 " + num(gaps.back()) + " (< 1e-4)");
}

void curvature_coupling_demos(Checks& c) {
  const auto demos = demo_configs();
  auto fields = [](const SolvedModel& sol, auto&& visit) {
    for (double s : sample_points(sol, SampleLocation::Uniform, 201)) visit(evaluate(sol, s));
  };
  {
    const SolvedModel sol = solve_demo(demo(demos, "s_curve_torque"));
    double qu = 0.0, th = 0.0;
    fields(sol, [&](const FieldSample& fs) {
      const Vec3r t = fs.frame.t.cast<Real>();
      qu = std::max(qu, double((normal_projector(t) * fs.u).norm()));
      th = std::max(th, double(fs.theta.norm()));
    });
    const double ratio = qu / (sol.model.curve.length() * th);
    c.expect(ratio >= c.floor(1e-6), "S-curve under end torque: max|Q u| / (L max|theta|) " + num(ratio) + " (>= 1e-6)");
  }
  {
    const SolvedModel sol = solve_demo(demo(demos, "s_curve_out_of_plane"));
    double tw = 0.0, th = 0.0;
    fields(sol, [&](const FieldSample& fs) {
      tw = std::max(tw, double(std::abs(fs.frame.t.cast<Real>().dot(fs.theta))));
      th = std::max(th, double(fs.theta.norm()));
    });
    c.expect(tw <= c.tol(1e-10), "S-curve under out-of-plane load: max|theta_t| " + num(tw) + " (<= 1e-10; max|theta| " +
                                     num(th) + ")");
  }
  {
    const SolvedModel sol = solve_demo(demo(demos, "straight_torque"));
    double u = 0.0, th = 0.0;
    fields(sol, [&](const FieldSample& fs) {
      u = std::max(u, double(fs.u.norm()));
      th = std::max(th, double(fs.theta.norm()));
    });
    const double ratio = u / (sol.model.curve.length() * th);
    c.expect(th > 0 && ratio <= c.tol(1e-10), "straight shaft under end torque: max|u| / (L max|theta|) " + num(ratio) +
                                                  " (<= 1e-10)");
  }
}

struct Criterion {
  const char* name;
  void (*run)(Checks&);
};

constexpr Criterion kCriteria[] = {
    {"straight_cantilever_order", straight_cantilever_order},
    {"h3p2_single_element", h3p2_single_element},
    {"quarter_arc_orders", quarter_arc_orders},
    {"quarter_arc_locking", quarter_arc_locking},
    {"straight_no_locking", straight_no_locking},
    {"resultant_forms", resultant_forms},
    {"geometry_identities", geometry_identities},
    {"mechanics_properties", mechanics_properties},
    {"timoshenko_eb_limit", timoshenko_eb_limit},
    {"curvature_coupling_demos", curvature_coupling_demos},
};

}  // namespace

std::vector<std::string> criterion_names() {
  std::vector<std::string> out;
  for (const auto& c : kCriteria) out.emplace_back(c.name);
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  const int count = static_cast<int>(std::size(kCriteria));
  for (int id : options.only)
    if (id < 1 || id > count) throw ValidationError("acceptance: no criterion " + std::to_string(id));
  for (int id = 1; id <= count; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = kCriteria[id - 1].name;
    Checks checks(options.tolerance_scale);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      kCriteria[id - 1].run(checks);
      r.passed = checks.ok();
      r.detail = checks.detail();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-26s (%.2f s)  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace cbeam
