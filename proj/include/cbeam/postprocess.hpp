#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cbeam/solver.hpp"

namespace cbeam {

/// Interpolated fields at one arc length. For Euler-Bernoulli solutions theta is
/// reconstructed as t x u' + t theta_t and differentiated through the Hermite interpolant.
/// Values are kept in the working precision: the shear strain is a small difference
/// of large slopes on thin beams.
struct FieldSample {
  FrameSample frame;
  Vec3r u;
  Vec3r du;
  Vec3r theta;
  Vec3r dtheta;
};

FieldSample evaluate(const SolvedModel& sol, double s);

/// Section resultants at one arc length.
struct Resultants {
  double s = 0.0;
  Vec3d N = Vec3d::Zero();  // axial force
  Vec3d S = Vec3d::Zero();  // shear force
  Vec3d M = Vec3d::Zero();  // bending moment
  Vec3d T = Vec3d::Zero();  // torsion
};

/// N = E|A| P u',  S = G|A| (Q u' - theta x t),  M = E I_Sigma theta',  T = G J P theta'.
Resultants resultants(const SolvedModel& sol, double s);

/// Same quantities with the tangential and normal-plane parts separated:
///   N = E|A| (u_t' - (Q u) . kappa) t
///   S = G|A| (Q (Q u)' - (Q theta) x t + u_t kappa)
///   M = E I_Sigma ((Q theta)' + theta_t kappa)
///   T = G J (theta_t' - (Q theta) . kappa) t
Resultants resultants_curvature_form(const SolvedModel& sol, double s);

/// Shear angle Q gamma with G|A| (Q gamma) x t = S. Zero for Euler-Bernoulli solutions.
Vec3d shear_angle(const SolvedModel& sol, double s);

/// Continuous fields to be interpolated onto a discretization.
struct FieldFunctions {
  std::function<Vec3d(double)> u;
  std::function<Vec3d(double)> du;     // only read for Hermite midlines
  std::function<Vec3d(double)> theta;  // Euler-Bernoulli keeps t . theta
};

/// Coefficients of the nodal interpolant in DofMap numbering (values at nodes and
/// element midpoints, slopes at nodes for Hermite midlines).
Eigen::VectorXd interpolate(const Curve& curve, const Discretization& disc, const FieldFunctions& f);

/// Where resultants are sampled by default.
enum class SampleLocation { QuadraturePoints, ElementEnds, Uniform };

/// Sample positions: Gauss points of the stretch/shear rule, element end points,
/// or `count` uniformly spaced points including both ends.
std::vector<double> sample_points(const SolvedModel& sol, SampleLocation where, int count = 0);

struct EndReaction {
  Vec3d force = Vec3d::Zero();
  Vec3d moment = Vec3d::Zero();
};

/// Support reactions K u - b (compliant rows counted as stiffness) at the two end nodes.
struct Reactions {
  EndReaction start;
  EndReaction end;
};

Reactions reactions(const SolvedModel& sol);

/// Total applied force and moment about the origin (body force plus end loads and natural values).
EndReaction applied_load(const SolvedModel& sol);

/// 1/2 u^T K u, plus the energy held by compliant constraint rows.
double strain_energy(const SolvedModel& sol);

/// Displacement of the midline at s = L.
Vec3d tip_displacement(const SolvedModel& sol);

struct CenterlineRow {
  double s;
  Vec3d x;
  Vec3d u;
  Vec3d theta;
};

std::vector<CenterlineRow> centerline(const SolvedModel& sol, const std::vector<double>& s);

void write_centerline_csv(const std::filesystem::path& path, const std::vector<CenterlineRow>& rows);
void write_resultants_csv(const std::filesystem::path& path, const std::vector<Resultants>& rows);

/// Numeric CSV with one header line, as written by the functions above.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// %.17g formatting used by every numeric output.
std::string format_double(double v);

}  // namespace cbeam
