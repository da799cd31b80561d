#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cbeam/linalg.hpp"

namespace cbeam {

// Curve shapes. Every shape is parametrized by a dimensionless xi; line, arc and
// helix use xi in [0, 1], a Hermite spline with m pieces uses xi in [0, m].

struct LineSegment {
  Vec3d start;
  Vec3d end;
};

/// r(xi) = center + radius (cos(phi) e1 + sin(phi) e2), phi = angle0 + xi (angle1 - angle0).
/// angle1 < angle0 traverses the arc clockwise in the (e1, e2) plane.
struct CircularArc {
  Vec3d center;
  double radius;
  Vec3d e1;
  Vec3d e2;
  double angle0;
  double angle1;
};

/// r(xi) = origin + (a cos(phi), a sin(phi), b phi), phi = angle0 + xi (angle1 - angle0).
struct Helix {
  double radius;  // a
  double pitch;   // b, rise per radian
  double angle0;
  double angle1;
  Vec3d origin = Vec3d::Zero();
};

/// Piecewise cubic Hermite curve; piece k runs over xi in [k, k + 1] and uses
/// tangents[k], tangents[k + 1] as dr/dxi at its ends, so pieces join C1.
struct HermiteSpline {
  std::vector<Vec3d> points;
  std::vector<Vec3d> tangents;
};

using CurveShape = std::variant<LineSegment, CircularArc, Helix, HermiteSpline>;

enum class CurveKind { LineSegment, CircularArc, Helix, HermiteSpline };

/// Position and the first three parameter derivatives at one xi.
struct CurveJet {
  Vec3d r;
  Vec3d d1;
  Vec3d d2;
  Vec3d d3;
};

class ParamCurve {
 public:
  explicit ParamCurve(CurveShape shape);

  static ParamCurve line(const Vec3d& a, const Vec3d& b);
  static ParamCurve arc(const Vec3d& center, double radius, const Vec3d& e1, const Vec3d& e2,
                        double angle0, double angle1);
  static ParamCurve helix(double a, double b, double angle0, double angle1,
                          const Vec3d& origin = Vec3d::Zero());
  static ParamCurve hermite(std::vector<Vec3d> points, std::vector<Vec3d> tangents);
  /// C2 cubic spline through the points (uniform knots) with clamped end tangents.
  static ParamCurve hermite_clamped(std::vector<Vec3d> points, const Vec3d& t0, const Vec3d& t1);

  CurveKind kind() const;
  const CurveShape& shape() const { return shape_; }
  double xi_begin() const { return 0.0; }
  double xi_end() const;

  CurveJet jet(double xi) const;
  Vec3d position(double xi) const { return jet(xi).r; }

  /// Closed-form arc length where the speed |dr/dxi| is constant (line, arc, helix).
  std::optional<double> constant_speed() const;
  /// Parameter values where the curve is only C1 (spline knots), including the ends.
  std::vector<double> breakpoints() const;

 private:
  CurveShape shape_;
};

/// Monotone xi <-> s table, s accumulated by Gauss-Legendre quadrature of |dr/dxi|.
class ArcLengthTable {
 public:
  ArcLengthTable(const ParamCurve& curve, std::size_t n_samples);

  const ParamCurve& curve() const { return curve_; }
  double length() const { return s_.back(); }
  std::span<const double> xi() const { return xi_; }
  std::span<const double> s() const { return s_; }

  /// s(xi) by quadrature from the nearest table entry.
  double arc_length(double xi) const;
  /// xi(s): monotone interpolation in the table refined by Newton on s(xi) - s.
  double parameter(double s) const;

 private:
  ParamCurve curve_;
  std::vector<double> xi_;
  std::vector<double> s_;
};

ArcLengthTable arc_length_table(const ParamCurve& curve, std::size_t n_samples);

struct FrameSample {
  double s;
  Vec3d x;
  Vec3d t;
  Vec3d kappa;
};

struct FrenetFrame {
  Vec3d t;
  Vec3d n;
  Vec3d b;
  double kappa;
  double tau;
};

struct ClosestPointResult {
  Vec3d p;
  Vec3d zeta;
  double s;
};

/// Beam midline: a parametric curve together with its arc-length chart.
/// Everything downstream of geometry works in arc length s in [0, length()].
class Curve {
 public:
  explicit Curve(ParamCurve curve, std::size_t samples_per_piece = 64);

  const ParamCurve& param() const { return table_.curve(); }
  const ArcLengthTable& table() const { return table_; }
  double length() const { return length_; }

  double parameter(double s) const;
  double arc_length(double xi) const;
  /// Arc lengths of the spline knots (C1 points), ends included.
  std::vector<double> breakpoints() const;

 private:
  ArcLengthTable table_;
  double length_;
};

/// Tangent and curvature vector at arc length s.
FrameSample eval_frame(const Curve& curve, double s);

/// Frenet-Serret frame. Throws ZeroCurvatureError when |kappa| <= kappa_min
/// (default 1e-10 / L). Only used for testing; the beam solver never needs normals.
FrenetFrame frenet(const Curve& curve, double s, std::optional<double> kappa_min = std::nullopt);

/// Closest point on the curve by dense sampling, golden-section bracketing and
/// Newton refinement of (x - r(xi)) . r'(xi) = 0.
ClosestPointResult closest_point(const Curve& curve, const Vec3d& x);

}  // namespace cbeam
