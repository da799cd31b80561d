#include "cbeam/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cbeam/errors.hpp"
#include "cbeam/postprocess.hpp"

namespace cbeam {

double analytic_straight_tip(double P, double E, double nu, double t, double L) {
  if (!(E > 0 && t > 0 && L > 0)) throw ValidationError("analytic_straight_tip: E, t and L must be positive");
  const double I = t * t * t / 12.0;
  return -(P / (6.0 * E * I)) * ((4.0 + 5.0 * nu) * t * t * L / 4.0 + 2.0 * L * L * L);
}

double analytic_quarter_arc_tip(double P, double E, double a, double b) {
  if (!(a > 0 && b > a)) throw ValidationError("analytic_quarter_arc_tip: need 0 < a < b");
  if (!(E > 0)) throw ValidationError("analytic_quarter_arc_tip: E must be positive");
  // (a^2 - b^2) + (a^2 + b^2) log(b/a) = a^2 g(x), x = (b - a) / a, where g cancels
  // down to O(x^3); thin rings use the series g = sum_k (-1)^(k+1) (2/k - 2/(k-1) + 1/(k-2)) x^k.
  const double x = (b - a) / a;
  const double sum2 = a * a + b * b;
  double g = 0.0;
  if (x < 0.1) {
    double xk = x * x * x;
    for (int k = 3; k < 60; ++k, xk *= x) {
      const double term = (k % 2 ? 1.0 : -1.0) * (2.0 / k - 2.0 / (k - 1) + 1.0 / (k - 2)) * xk;
      g += term;
      if (std::abs(term) < 1e-18 * std::abs(g)) break;
    }
  } else {
    g = (2.0 + 2.0 * x + x * x) * std::log1p(x) - x * (2.0 + x);
  }
  const double denom = a * a * g;
  return -P * std::numbers::pi * sum2 / (E * denom);
}

std::string_view to_string(Benchmark b) { return b == Benchmark::Straight ? "straight" : "quarter_arc"; }

std::optional<Benchmark> benchmark_from_string(std::string_view name) {
  if (name == "straight") return Benchmark::Straight;
  if (name == "quarter_arc") return Benchmark::QuarterArc;
  return std::nullopt;
}

BeamModel benchmark_model(const BenchmarkSetup& setup, double t) {
  if (!(t > 0)) throw ValidationError("benchmark_model: thickness must be positive");
  const Material mat = Material::from_E_nu(setup.E, setup.nu);
  const CrossSection sec = section_from_shape(UnitDepthRectShape{t});
  if (setup.benchmark == Benchmark::Straight) {
    BeamModel m{Curve(ParamCurve::line(Vec3d::Zero(), Vec3d(setup.length, 0, 0))), mat, sec};
    m.loads.end.force = Vec3d(0, -setup.P, 0);
    return m;
  }
  const double R = setup.radius;
  if (!(R > t / 2)) throw ValidationError("benchmark_model: radius must exceed half the thickness");
  BeamModel m{Curve(ParamCurve::arc(Vec3d::Zero(), R, Vec3d::UnitX(), Vec3d::UnitY(), std::numbers::pi / 2, 0.0)),
              mat, sec};
  m.loads.end.force = Vec3d(-setup.P, 0, 0);
  return m;
}

int qoi_component(Benchmark b) { return b == Benchmark::Straight ? 1 : 0; }

double analytic_reference(const BenchmarkSetup& setup, double t) {
  if (setup.benchmark == Benchmark::Straight)
    return analytic_straight_tip(setup.P, setup.E, setup.nu, t, setup.length);
  return analytic_quarter_arc_tip(setup.P, setup.E, setup.radius - t / 2, setup.radius + t / 2);
}

void validate(const StudySpec& study) {
  if (study.formulations.empty()) throw ValidationError("study: formulation list is empty");
  if (study.policies.empty()) throw ValidationError("study: quadrature list is empty");
  if (study.elements.empty()) throw ValidationError("study: element list is empty");
  if (study.thickness.empty()) throw ValidationError("study: thickness list is empty");
  for (std::size_t i = 0; i < study.elements.size(); ++i) {
    if (study.elements[i] < 1) throw ValidationError("study: element counts must be positive");
    if (i > 0 && study.elements[i] <= study.elements[i - 1])
      throw ValidationError("study: element counts must be strictly increasing");
  }
  for (double t : study.thickness)
    if (!(t > 0)) throw ValidationError("study: thickness values must be positive");
}

const ConvergenceGroup* ConvergenceReport::find(FormulationKind f, QuadraturePolicy p, double t) const {
  for (const auto& g : groups)
    if (g.formulation == f && g.policy == p && g.t == t) return &g;
  return nullptr;
}

void fit_order(ConvergenceGroup& g) {
  g.pair_orders.clear();
  g.order.reset();
  std::vector<ConvergenceRow*> solved;
  for (auto& r : g.rows) {
    r.plateau = false;
    if (r.solved) solved.push_back(&r);
  }

  // Once the error fails to drop by 20% the remaining meshes sit on the plateau
  // set by the modelling error of the reference.
  std::size_t pre = solved.size();
  for (std::size_t k = 1; k < solved.size(); ++k) {
    const double lo = std::log(double(solved[k]->n_elem) / solved[k - 1]->n_elem);
    const double e0 = solved[k - 1]->error, e1 = solved[k]->error;
    g.pair_orders.push_back(e0 > 0 && e1 > 0 ? std::log(e0 / e1) / lo : std::numeric_limits<double>::quiet_NaN());
    if (pre == solved.size() && !(e1 < 0.8 * e0)) pre = k;
  }
  for (std::size_t k = pre; k < solved.size(); ++k) solved[k]->plateau = true;

  if (g.rows.size() < 3 || pre < 3) return;
  // Least-squares slope of log e against log n over the pre-plateau points.
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < pre; ++k) {
    mx += std::log(double(solved[k]->n_elem));
    my += std::log(solved[k]->error);
  }
  mx /= pre;
  my /= pre;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < pre; ++k) {
    const double dx = std::log(double(solved[k]->n_elem)) - mx;
    sxy += dx * (std::log(solved[k]->error) - my);
    sxx += dx * dx;
  }
  g.order = -sxy / sxx;
}

ConvergenceReport run_convergence(const StudySpec& study) {
  validate(study);
  ConvergenceReport report{study.setup.benchmark, {}};
  const int comp = qoi_component(study.setup.benchmark);
  for (double t : study.thickness) {
    const BeamModel model = benchmark_model(study.setup, t);
    const double ref = analytic_reference(study.setup, t);
    for (FormulationKind f : study.formulations)
      for (QuadraturePolicy p : study.policies) {
        ConvergenceGroup g{f, p, t, ref, {}, {}, std::nullopt};
        for (int n : study.elements) {
          ConvergenceRow row;
          row.n_elem = n;
          try {
            const SolvedModel sol = solve_model(model, Discretization::uniform(model.curve.length(), f, n, p));
            row.qoi = tip_displacement(sol)[comp];
            row.error = std::abs(row.qoi - ref);
            row.rel_error = row.error / std::abs(ref);
            row.solved = true;
          } catch (const Error& e) {
            row.message = e.what();
          }
          g.rows.push_back(row);
        }
        fit_order(g);
        report.groups.push_back(std::move(g));
      }
  }
  return report;
}

LockingReport run_locking_study(const StudySpec& study) {
  StudySpec both = study;
  both.policies = {QuadraturePolicy::Full, QuadraturePolicy::Reduced};
  const ConvergenceReport conv = run_convergence(both);
  LockingReport out{study.setup.benchmark, {}, {}};
  for (double t : study.thickness)
    for (FormulationKind f : study.formulations) {
      const auto* full = conv.find(f, QuadraturePolicy::Full, t);
      const auto* red = conv.find(f, QuadraturePolicy::Reduced, t);
      for (std::size_t i = 0; i < study.elements.size(); ++i) {
        const auto& a = full->rows[i];
        const auto& b = red->rows[i];
        if (!a.solved || !b.solved) continue;
        out.entries.push_back({f, t, a.n_elem, a.rel_error, b.rel_error, a.rel_error / b.rel_error});
      }
    }
  if (study.setup.benchmark == Benchmark::Straight) {
    const double t0 = study.thickness.front();
    for (FormulationKind f : study.formulations)
      for (QuadraturePolicy p : both.policies) {
        const auto* g0 = conv.find(f, p, t0);
        for (double t : study.thickness) {
          const auto* g = conv.find(f, p, t);
          for (std::size_t i = 0; i < study.elements.size(); ++i)
            if (g->rows[i].solved && g0->rows[i].solved)
              out.thickness_ratios.push_back({f, p, g->rows[i].n_elem, t, g->rows[i].rel_error / g0->rows[i].rel_error});
        }
      }
  }
  return out;
}

namespace {

// Hermite spline through points of a circular arc with exact tangents, m pieces.
void append_arc(std::vector<Vec3d>& pts, std::vector<Vec3d>& tans, const Vec3d& c, double R, double phi0,
                double phi1, int m) {
  const double dphi = (phi1 - phi0) / m;
  for (int i = pts.empty() ? 0 : 1; i <= m; ++i) {
    const double phi = phi0 + i * dphi;
    pts.push_back(c + R * Vec3d(std::cos(phi), std::sin(phi), 0));
    tans.push_back(R * dphi * Vec3d(-std::sin(phi), std::cos(phi), 0));
  }
}

Curve s_curve(double R) {
  using std::numbers::pi;
  std::vector<Vec3d> pts, tans;
  append_arc(pts, tans, Vec3d(0, 3 * R, 0), R, pi / 2, -pi / 2, 8);
  append_arc(pts, tans, Vec3d(0, R, 0), R, pi / 2, 3 * pi / 2, 8);
  return Curve(ParamCurve::hermite(std::move(pts), std::move(tans)));
}

}  // namespace

std::vector<DemoConfig> demo_configs() {
  using std::numbers::pi;
  const Material mat = Material::from_E_nu(1e6, 0.3);
  const CrossSection circ = section_from_shape(CircleShape{0.1});
  std::vector<DemoConfig> out;

  {
    BeamModel m{s_curve(1.0), mat, circ};
    m.loads.end.moment = Vec3d(0.01, 0, 0);  // tangent at the free end is +x
    out.push_back({"s_curve_torque", "S-curve clamped at the upper end, torque about the end tangent", std::move(m),
                   FormulationKind::TimoshenkoH3P2, 32, QuadraturePolicy::Reduced});
  }
  {
    BeamModel m{s_curve(1.0), mat, circ};
    m.loads.end.force = Vec3d(0, 0, -0.001);
    out.push_back({"s_curve_out_of_plane", "S-curve clamped at the upper end, end load normal to its plane",
                   std::move(m), FormulationKind::TimoshenkoH3P2, 32, QuadraturePolicy::Reduced});
  }
  for (double sign : {-1.0, 1.0}) {
    const double a = 1.0, b = 0.1;
    BeamModel m{Curve(ParamCurve::helix(a, b, 0.0, 6 * pi)), mat, circ};
    m.start = BoundaryCondition::pinned();
    m.start.twist.condition = Condition::Essential;  // removes the spin about the helix axis
    m.end = BoundaryCondition::free();
    m.end.guided = {Vec3d::UnitX(), Vec3d::UnitY()};
    m.loads.end.force = Vec3d(0, 0, sign * 0.001);
    out.push_back({sign < 0 ? "helix_push" : "helix_pull",
                   sign < 0 ? "helix pinned at the start, end guided along the axis, compressive end load"
                            : "helix pinned at the start, end guided along the axis, tensile end load",
                   std::move(m), FormulationKind::TimoshenkoH3P2, 96, QuadraturePolicy::Reduced});
  }
  {
    BeamModel m{Curve(ParamCurve::line(Vec3d::Zero(), Vec3d(4, 0, 0))), mat, circ};
    m.loads.end.moment = Vec3d(0.01, 0, 0);
    out.push_back({"straight_torque", "straight shaft clamped at one end, end torque", std::move(m),
                   FormulationKind::TimoshenkoH3P2, 8, QuadraturePolicy::Reduced});
  }
  return out;
}

}  // namespace cbeam
