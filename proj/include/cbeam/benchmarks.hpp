#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbeam/discretization.hpp"
#include "cbeam/model.hpp"

namespace cbeam {

/// Tip deflection u_y of a unit-depth cantilever of thickness t and length L under a tip load P.
double analytic_straight_tip(double P, double E, double nu, double t, double L);

/// Tip deflection u_x of a quarter-ring cantilever with inner radius a and outer radius b.
double analytic_quarter_arc_tip(double P, double E, double a, double b);

enum class Benchmark { Straight, QuarterArc };

std::string_view to_string(Benchmark b);
std::optional<Benchmark> benchmark_from_string(std::string_view name);

/// Load case and dimensions shared by the cells of a study.
struct BenchmarkSetup {
  Benchmark benchmark = Benchmark::Straight;
  double E = 1e6;
  double nu = 0.3;
  double P = 1.0;
  double length = 10.0;  // straight beam
  double radius = 1.0;   // mean radius of the quarter arc
};

/// Straight: line (0,0,0) -> (L,0,0), clamped at s = 0, tip force (0,-P,0).
/// Quarter arc: centre at the origin from (0,R,0) clockwise to (R,0,0), clamped at
/// s = 0, tip force (-P,0,0). Both use a unit-depth rectangle of thickness t.
BeamModel benchmark_model(const BenchmarkSetup& setup, double t);

/// Tip displacement component compared against the analytic reference (u_y or u_x).
int qoi_component(Benchmark b);
double analytic_reference(const BenchmarkSetup& setup, double t);

struct StudySpec {
  BenchmarkSetup setup;
  std::vector<FormulationKind> formulations;
  std::vector<QuadraturePolicy> policies;
  std::vector<int> elements;  // strictly increasing
  std::vector<double> thickness;
};

/// Throws ValidationError for empty lists, non-increasing meshes or non-positive thickness.
void validate(const StudySpec& study);

struct ConvergenceRow {
  int n_elem = 0;
  double qoi = 0.0;
  double error = 0.0;      // |qoi - reference|
  double rel_error = 0.0;  // error / |reference|
  bool solved = false;
  std::string message;     // solver failure, if any
  bool plateau = false;    // stopped improving by 20% against the previous mesh
};

struct ConvergenceGroup {
  FormulationKind formulation;
  QuadraturePolicy policy;
  double t = 0.0;
  double reference = 0.0;
  std::vector<ConvergenceRow> rows;
  /// log(e_k / e_{k+1}) / log(n_{k+1} / n_k) between consecutive solved meshes.
  std::vector<double> pair_orders;
  /// Least-squares slope of log error against log n over the pre-plateau points;
  /// empty with fewer than three such points.
  std::optional<double> order;
};

struct ConvergenceReport {
  Benchmark benchmark;
  std::vector<ConvergenceGroup> groups;

  const ConvergenceGroup* find(FormulationKind f, QuadraturePolicy p, double t) const;
};

ConvergenceReport run_convergence(const StudySpec& study);

/// Marks plateau rows and fits the order of one group in place.
void fit_order(ConvergenceGroup& group);

struct LockingEntry {
  FormulationKind formulation;
  double t = 0.0;
  int n_elem = 0;
  double rel_error_full = 0.0;
  double rel_error_reduced = 0.0;
  double ratio = 0.0;  // full / reduced
};

struct LockingReport {
  Benchmark benchmark;
  std::vector<LockingEntry> entries;
  /// Straight beam only: rel_error(t) / rel_error(t_first) per formulation, policy and mesh.
  struct ThicknessRatio {
    FormulationKind formulation;
    QuadraturePolicy policy;
    int n_elem;
    double t;
    double ratio;
  };
  std::vector<ThicknessRatio> thickness_ratios;
};

/// Both quadrature policies at every mesh and thickness of the study.
LockingReport run_locking_study(const StudySpec& study);

struct DemoConfig {
  std::string name;
  std::string description;
  BeamModel model;
  FormulationKind formulation;
  int elements;
  QuadraturePolicy policy;
};

/// S-curve under end torque, S-curve under an out-of-plane end load, helix pinned at
/// one end and guided at the other under axial loads, straight beam under end torque.
std::vector<DemoConfig> demo_configs();

}  // namespace cbeam
