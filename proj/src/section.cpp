#include "cbeam/section.hpp"

#include <cmath>
#include <numbers>

#include "cbeam/errors.hpp"

namespace cbeam {

Material Material::from_E_nu(double E, double nu) {
  if (!(E > 0)) throw ValidationError("material: E must be positive");
  if (!(nu > -1.0 && nu < 0.5)) throw ValidationError("material: nu must lie in (-1, 0.5)");
  return {E, E / (2.0 * (1.0 + nu)), nu};
}

Material Material::from_E_G(double E, double G) {
  if (!(E > 0)) throw ValidationError("material: E must be positive");
  if (!(G > 0)) throw ValidationError("material: G must be positive");
  return {E, G, E / (2.0 * G) - 1.0};
}

CrossSection section_from_shape(const SectionShape& shape) {
  if (const auto* r = std::get_if<RectShape>(&shape)) {
    if (!(r->w > 0 && r->h > 0)) throw ValidationError("section: rectangle dimensions must be positive");
    const double A = r->w * r->h;
    const double I1 = r->w * r->h * r->h * r->h / 12.0;
    const double I2 = r->w * r->w * r->w * r->h / 12.0;
    if (r->director) {
      if (r->director->norm() == 0) throw ValidationError("section: zero director");
      return {A, OrientedInertia{I1, I2, r->director->normalized()}, I1 + I2};
    }
    if (r->w != r->h) throw ValidationError("section: a non-square rectangle needs a director");
    return {A, IsotropicInertia{I1}, I1 + I2};
  }
  if (const auto* c = std::get_if<CircleShape>(&shape)) {
    if (!(c->d > 0)) throw ValidationError("section: diameter must be positive");
    const double pi = std::numbers::pi;
    const double I = pi * std::pow(c->d, 4) / 64.0;
    return {pi * c->d * c->d / 4.0, IsotropicInertia{I}, 2.0 * I};
  }
  const auto& u = std::get<UnitDepthRectShape>(shape);
  if (!(u.t > 0)) throw ValidationError("section: thickness must be positive");
  const double I = u.t * u.t * u.t / 12.0;
  return {u.t, IsotropicInertia{I}, 2.0 * I};
}

Mat3d inertia_tensor(const CrossSection& section, const Vec3d& t) {
  if (const auto* iso = std::get_if<IsotropicInertia>(&section.inertia)) return iso->I * normal_projector(t);
  const auto& o = std::get<OrientedInertia>(section.inertia);
  const Vec3d d = o.director - t * t.dot(o.director);
  // 1e-6 rad between director and tangent
  if (d.norm() < std::sin(1e-6) * o.director.norm())
    throw DirectorDegeneracyError("inertia_tensor: section director is parallel to the tangent");
  const Vec3d n1 = d.normalized();
  const Vec3d n2 = t.cross(n1);
  return o.I1 * n2 * n2.transpose() + o.I2 * n1 * n1.transpose();
}

CrossSection scale(const ThicknessFamily& family, double t) {
  if (!(t > 0)) throw ValidationError("scale: thickness must be positive");
  const bool quad = family.law == ThicknessScaling::Quadratic;
  const double fa = quad ? t * t : t;
  const double fi = quad ? t * t * t * t : t * t * t;
  CrossSection s = family.reference;
  s.area *= fa;
  s.polar *= fi;
  std::visit(
      [fi](auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, IsotropicInertia>) {
          in.I *= fi;
        } else {
          in.I1 *= fi;
          in.I2 *= fi;
        }
      },
      s.inertia);
  return s;
}

}  // namespace cbeam
