#include "cbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbeam/errors.hpp"
#include "cbeam/quadrature.hpp"

namespace cbeam {

namespace {

constexpr double kMinSpeed = 1e-14;
constexpr int kSpeedQuadPoints = 16;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

CurveJet line_jet(const LineSegment& l, double) {
  return {Vec3d::Zero(), l.end - l.start, Vec3d::Zero(), Vec3d::Zero()};
}

CurveJet hermite_jet(const HermiteSpline& h, double xi) {
  const auto pieces = static_cast<int>(h.points.size()) - 1;
  int k = std::clamp(static_cast<int>(std::floor(xi)), 0, pieces - 1);
  const double u = xi - k;
  const double u2 = u * u, u3 = u2 * u;
  const Vec3d& p0 = h.points[k];
  const Vec3d& p1 = h.points[k + 1];
  const Vec3d& m0 = h.tangents[k];
  const Vec3d& m1 = h.tangents[k + 1];
  CurveJet j;
  j.r = (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * m1;
  j.d1 = (6 * u2 - 6 * u) * p0 + (3 * u2 - 4 * u + 1) * m0 + (-6 * u2 + 6 * u) * p1 + (3 * u2 - 2 * u) * m1;
  j.d2 = (12 * u - 6) * p0 + (6 * u - 4) * m0 + (-12 * u + 6) * p1 + (6 * u - 2) * m1;
  j.d3 = 12.0 * p0 + 6.0 * m0 - 12.0 * p1 + 6.0 * m1;
  return j;
}

void check_regular(const ParamCurve& c) {
  const auto bps = c.breakpoints();
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    constexpr int kSamples = 64;
    for (int i = 0; i <= kSamples; ++i) {
      const double xi = bps[k] + (bps[k + 1] - bps[k]) * i / kSamples;
      if (c.jet(xi).d1.norm() < kMinSpeed)
        throw DegenerateCurveError("curve is not regular: |dr/dxi| vanishes near xi = " + std::to_string(xi));
    }
  }
}

}  // namespace

ParamCurve::ParamCurve(CurveShape shape) : shape_(std::move(shape)) {
  std::visit(overloaded{
                 [](const LineSegment& l) {
                   if (!l.start.allFinite() || !l.end.allFinite())
                     throw ValidationError("line: non-finite endpoint");
                 },
                 [](CircularArc& a) {
                   if (!(a.radius > 0)) throw ValidationError("arc: radius must be positive");
                   if (a.angle0 == a.angle1) throw DegenerateCurveError("arc: empty angle range");
                   if (a.e1.norm() == 0) throw ValidationError("arc: zero basis vector");
                   a.e1.normalize();
                   a.e2 -= a.e1 * a.e1.dot(a.e2);
                   if (a.e2.norm() < 1e-12) throw ValidationError("arc: basis vectors are parallel");
                   a.e2.normalize();
                 },
                 [](const Helix& h) {
                   if (!(h.radius > 0)) throw ValidationError("helix: radius must be positive");
                   if (h.angle0 == h.angle1) throw DegenerateCurveError("helix: empty angle range");
                 },
                 [](const HermiteSpline& h) {
                   if (h.points.size() < 2) throw ValidationError("hermite spline: need at least two points");
                   if (h.points.size() != h.tangents.size())
                     throw ValidationError("hermite spline: one tangent per point required");
                 },
             },
             shape_);
  check_regular(*this);
}

ParamCurve ParamCurve::line(const Vec3d& a, const Vec3d& b) { return ParamCurve(LineSegment{a, b}); }

ParamCurve ParamCurve::arc(const Vec3d& center, double radius, const Vec3d& e1, const Vec3d& e2,
                           double angle0, double angle1) {
  return ParamCurve(CircularArc{center, radius, e1, e2, angle0, angle1});
}

ParamCurve ParamCurve::helix(double a, double b, double angle0, double angle1, const Vec3d& origin) {
  return ParamCurve(Helix{a, b, angle0, angle1, origin});
}

ParamCurve ParamCurve::hermite(std::vector<Vec3d> points, std::vector<Vec3d> tangents) {
  return ParamCurve(HermiteSpline{std::move(points), std::move(tangents)});
}

ParamCurve ParamCurve::hermite_clamped(std::vector<Vec3d> points, const Vec3d& t0, const Vec3d& t1) {
  const auto n = points.size();
  if (n < 2) throw ValidationError("hermite spline: need at least two points");
  std::vector<Vec3d> m(n, Vec3d::Zero());
  m.front() = t0;
  m.back() = t1;
  if (n > 2) {
    // m[i-1] + 4 m[i] + m[i+1] = 3 (p[i+1] - p[i-1]), Thomas algorithm on interior unknowns
    const auto k = n - 2;
    std::vector<double> c(k);
    std::vector<Vec3d> d(k);
    for (std::size_t i = 0; i < k; ++i) {
      Vec3d rhs = 3.0 * (points[i + 2] - points[i]);
      if (i == 0) rhs -= t0;
      if (i == k - 1) rhs -= t1;
      const double denom = 4.0 - (i > 0 ? c[i - 1] : 0.0);
      c[i] = 1.0 / denom;
      d[i] = (rhs - (i > 0 ? d[i - 1] : Vec3d::Zero().eval())) / denom;
    }
    m[k] = d[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) m[i + 1] = d[i] - c[i] * m[i + 2];
  }
  return hermite(std::move(points), std::move(m));
}

CurveKind ParamCurve::kind() const {
  return static_cast<CurveKind>(shape_.index());
}

double ParamCurve::xi_end() const {
  if (const auto* h = std::get_if<HermiteSpline>(&shape_)) return static_cast<double>(h->points.size() - 1);
  return 1.0;
}

CurveJet ParamCurve::jet(double xi) const {
  return std::visit(
      overloaded{
          [xi](const LineSegment& l) {
            CurveJet j = line_jet(l, xi);
            j.r = l.start + xi * (l.end - l.start);
            return j;
          },
          [xi](const CircularArc& a) {
            const double dphi = a.angle1 - a.angle0;
            const double phi = a.angle0 + xi * dphi;
            const Vec3d c = std::cos(phi) * a.e1 + std::sin(phi) * a.e2;
            const Vec3d s = -std::sin(phi) * a.e1 + std::cos(phi) * a.e2;
            return CurveJet{a.center + a.radius * c, a.radius * dphi * s, -a.radius * dphi * dphi * c,
                            -a.radius * dphi * dphi * dphi * s};
          },
          [xi](const Helix& h) {
            const double dphi = h.angle1 - h.angle0;
            const double phi = h.angle0 + xi * dphi;
            const double ca = std::cos(phi), sa = std::sin(phi);
            const double a = h.radius, b = h.pitch;
            return CurveJet{h.origin + Vec3d(a * ca, a * sa, b * phi), dphi * Vec3d(-a * sa, a * ca, b),
                            dphi * dphi * Vec3d(-a * ca, -a * sa, 0), dphi * dphi * dphi * Vec3d(a * sa, -a * ca, 0)};
          },
          [xi](const HermiteSpline& h) { return hermite_jet(h, xi); },
      },
      shape_);
}

std::optional<double> ParamCurve::constant_speed() const {
  return std::visit(overloaded{
                        [](const LineSegment& l) -> std::optional<double> { return (l.end - l.start).norm(); },
                        [](const CircularArc& a) -> std::optional<double> {
                          return a.radius * std::abs(a.angle1 - a.angle0);
                        },
                        [](const Helix& h) -> std::optional<double> {
                          return std::hypot(h.radius, h.pitch) * std::abs(h.angle1 - h.angle0);
                        },
                        [](const HermiteSpline&) -> std::optional<double> { return std::nullopt; },
                    },
                    shape_);
}

std::vector<double> ParamCurve::breakpoints() const {
  std::vector<double> b;
  const auto end = static_cast<int>(xi_end());
  if (kind() == CurveKind::HermiteSpline) {
    for (int k = 0; k <= end; ++k) b.push_back(k);
  } else {
    b = {0.0, 1.0};
  }
  return b;
}

// ---------------------------------------------------------------------------

namespace {

double speed_integral(const ParamCurve& c, double a, double b) {
  if (a == b) return 0.0;
  return integrate([&c](double xi) { return c.jet(xi).d1.norm(); }, a, b, kSpeedQuadPoints);
}

}  // namespace

ArcLengthTable::ArcLengthTable(const ParamCurve& curve, std::size_t n_samples) : curve_(curve) {
  if (n_samples < 2) throw ValidationError("arc_length_table: need at least two samples");
  const auto bps = curve_.breakpoints();
  const std::size_t pieces = bps.size() - 1;
  const std::size_t per_piece = std::max<std::size_t>(1, (n_samples - 1) / pieces);
  xi_.push_back(bps.front());
  s_.push_back(0.0);
  for (std::size_t k = 0; k < pieces; ++k) {
    for (std::size_t i = 1; i <= per_piece; ++i) {
      const double xi = (i == per_piece) ? bps[k + 1] : bps[k] + (bps[k + 1] - bps[k]) * double(i) / double(per_piece);
      if (curve_.jet(xi).d1.norm() < kMinSpeed)
        throw DegenerateCurveError("arc_length_table: |dr/dxi| vanishes at xi = " + std::to_string(xi));
      s_.push_back(s_.back() + speed_integral(curve_, xi_.back(), xi));
      xi_.push_back(xi);
    }
  }
}

double ArcLengthTable::arc_length(double xi) const {
  xi = std::clamp(xi, xi_.front(), xi_.back());
  auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
  const auto j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - xi_.begin()) - 1));
  return s_[j] + speed_integral(curve_, xi_[j], xi);
}

double ArcLengthTable::parameter(double s) const {
  s = std::clamp(s, 0.0, length());
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - s_.begin()) - 1));
  if (j + 1 >= s_.size()) return xi_.back();
  const double lo = xi_[j], hi = xi_[j + 1];
  double xi = lo + (hi - lo) * (s - s_[j]) / (s_[j + 1] - s_[j]);
  for (int iter = 0; iter < 30; ++iter) {
    const double f = s_[j] + speed_integral(curve_, lo, xi) - s;
    const double step = f / curve_.jet(xi).d1.norm();
    xi = std::clamp(xi - step, lo, hi);
    if (std::abs(f) <= 1e-15 * std::max(1.0, length())) break;
  }
  return xi;
}

ArcLengthTable arc_length_table(const ParamCurve& curve, std::size_t n_samples) {
  return ArcLengthTable(curve, n_samples);
}

// ---------------------------------------------------------------------------

Curve::Curve(ParamCurve curve, std::size_t samples_per_piece)
    : table_(curve, samples_per_piece * (curve.breakpoints().size() - 1) + 1) {
  const auto cs = table_.curve().constant_speed();
  length_ = cs ? *cs : table_.length();
}

double Curve::parameter(double s) const {
  if (const auto cs = param().constant_speed()) return std::clamp(s / *cs, 0.0, 1.0);
  return table_.parameter(s);
}

double Curve::arc_length(double xi) const {
  if (const auto cs = param().constant_speed()) return std::clamp(xi, 0.0, 1.0) * *cs;
  return table_.arc_length(xi);
}

std::vector<double> Curve::breakpoints() const {
  std::vector<double> out;
  for (double xi : param().breakpoints()) out.push_back(arc_length(xi));
  out.back() = length_;
  return out;
}

FrameSample eval_frame(const Curve& curve, double s) {
  const double L = curve.length();
  const double slack = 1e-12 * L;
  if (!(s >= -slack && s <= L + slack))
    throw DomainError("eval_frame: s = " + std::to_string(s) + " outside [0, " + std::to_string(L) + "]");
  s = std::clamp(s, 0.0, L);
  const CurveJet j = curve.param().jet(curve.parameter(s));
  const double speed = j.d1.norm();
  FrameSample f;
  f.s = s;
  f.x = j.r;
  f.t = j.d1 / speed;
  f.kappa = (j.d2 - f.t * f.t.dot(j.d2)) / (speed * speed);
  return f;
}

FrenetFrame frenet(const Curve& curve, double s, std::optional<double> kappa_min) {
  const double threshold = kappa_min.value_or(1e-10 / curve.length());
  const FrameSample f = eval_frame(curve, s);
  const double k = f.kappa.norm();
  if (k <= threshold) throw ZeroCurvatureError("frenet: curvature " + std::to_string(k) + " below threshold");
  const CurveJet j = curve.param().jet(curve.parameter(f.s));
  const Vec3d c = j.d1.cross(j.d2);
  FrenetFrame fr;
  fr.t = f.t;
  fr.n = f.kappa / k;
  fr.b = fr.t.cross(fr.n);
  fr.kappa = k;
  fr.tau = c.dot(j.d3) / c.squaredNorm();
  return fr;
}

namespace {

struct LocalMin {
  double xi;
  double dist;
};

LocalMin refine_closest(const ParamCurve& c, const Vec3d& x, double lo, double hi) {
  auto d2 = [&](double xi) { return (x - c.jet(xi).r).squaredNorm(); };
  // golden section to narrow the bracket
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = d2(x1), f2 = d2(x2);
  for (int i = 0; i < 40; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = d2(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = d2(x2);
    }
  }
  double xi = 0.5 * (a + b);
  // Newton on (r(xi) - x) . r'(xi) = 0
  for (int i = 0; i < 50; ++i) {
    const CurveJet j = c.jet(xi);
    const Vec3d diff = j.r - x;
    const double gval = diff.dot(j.d1);
    if (std::abs(gval) <= 1e-14 * j.d1.norm() * std::max(diff.norm(), 1e-300)) break;
    const double dg = j.d1.squaredNorm() + diff.dot(j.d2);
    if (dg <= 0) break;
    const double next = std::clamp(xi - gval / dg, lo, hi);
    if (next == xi) break;
    xi = next;
  }
  return {xi, std::sqrt(d2(xi))};
}

}  // namespace

ClosestPointResult closest_point(const Curve& curve, const Vec3d& x) {
  const ParamCurve& c = curve.param();
  const auto bps = c.breakpoints();
  std::vector<double> xis;
  constexpr int kPerPiece = 256;
  for (std::size_t k = 0; k + 1 < bps.size(); ++k)
    for (int i = (k == 0 ? 0 : 1); i <= kPerPiece; ++i) xis.push_back(bps[k] + (bps[k + 1] - bps[k]) * i / kPerPiece);
  std::vector<double> dist(xis.size());
  for (std::size_t i = 0; i < xis.size(); ++i) dist[i] = (x - c.jet(xis[i]).r).norm();
  const double dmin = *std::min_element(dist.begin(), dist.end());
  const double L = curve.length();

  std::vector<LocalMin> mins;
  const std::size_t n = xis.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || dist[i] <= dist[i - 1];
    const bool right_ok = i + 1 == n || dist[i] <= dist[i + 1];
    if (!(left_ok && right_ok)) continue;
    if (dist[i] > dmin * (1.0 + 1e-2) + 1e-12 * L) continue;
    const double lo = xis[i == 0 ? 0 : i - 1];
    const double hi = xis[i + 1 == n ? n - 1 : i + 1];
    mins.push_back(refine_closest(c, x, lo, hi));
  }
  auto best = std::min_element(mins.begin(), mins.end(),
                               [](const LocalMin& a, const LocalMin& b) { return a.dist < b.dist; });
  const double tol = 1e-9 * std::max(best->dist, 1e-12 * L);
  for (const auto& m : mins) {
    if (&m == &*best) continue;
    const double sep = (c.jet(m.xi).r - c.jet(best->xi).r).norm();
    if (std::abs(m.dist - best->dist) <= tol && sep > 1e-6 * L)
      throw AmbiguityError("closest_point: multiple minimizers at distance " + std::to_string(best->dist));
  }
  ClosestPointResult res;
  res.p = c.jet(best->xi).r;
  res.zeta = x - res.p;
  if (res.zeta.norm() <= 1e-14 * L) {
    res.zeta.setZero();
    res.p = x;
  }
  res.s = curve.arc_length(best->xi);
  return res;
}

}  // namespace cbeam
