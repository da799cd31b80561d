#include "cbeam/assembly.hpp"

#include <cmath>

#include "cbeam/errors.hpp"

namespace cbeam {

BoundaryCondition BoundaryCondition::clamped() {
  BoundaryCondition bc;
  bc.stretch.condition = Condition::Essential;
  bc.shear.condition = Condition::Essential;
  bc.bend.condition = Condition::Essential;
  bc.twist.condition = Condition::Essential;
  return bc;
}

BoundaryCondition BoundaryCondition::free() { return {}; }

BoundaryCondition BoundaryCondition::pinned() {
  BoundaryCondition bc;
  bc.stretch.condition = Condition::Essential;
  bc.shear.condition = Condition::Essential;
  return bc;
}

int BoundaryCondition::essential_rows() const {
  int n = 0;
  n += stretch.condition == Condition::Essential ? 1 : 0;
  n += shear.condition == Condition::Essential ? 2 : 0;
  n += bend.condition == Condition::Essential ? 2 : 0;
  n += twist.condition == Condition::Essential ? 1 : 0;
  return n + static_cast<int>(guided.size());
}

PointOperators point_operators(const FrameSample& frame, const Discretization& disc, const Element& element) {
  const Formulation& f = disc.formulation;
  const int n = disc.dofs.local_size();
  const int off = disc.dofs.angle_offset();
  const Vec3d& t = frame.t;
  const Mat3d P = tangent_projector(t);
  const Mat3d Q = normal_projector(t);

  PointOperators op;
  op.axial.setZero(3, n);
  op.shear.setZero(3, n);
  op.bending.setZero(3, n);
  op.twist.setZero(3, n);

  const ShapeValues mid = shape_eval(f.midline, element, frame.s, f.euler_bernoulli() ? 2 : 1);
  const ShapeValues ang = shape_eval(f.angle, element, frame.s, 1);

  if (!f.euler_bernoulli()) {
    const Mat3d tx = skew(t);  // -theta x t = t x theta
    for (int b = 0; b < mid.value.size(); ++b) {
      op.axial.middleCols<3>(3 * b) = mid.d1[b] * P;
      op.shear.middleCols<3>(3 * b) = mid.d1[b] * Q;
    }
    for (int b = 0; b < ang.value.size(); ++b) {
      op.shear.middleCols<3>(off + 3 * b) = ang.value[b] * tx;
      op.bending.middleCols<3>(off + 3 * b) = ang.d1[b] * Q;
      op.twist.middleCols<3>(off + 3 * b) = ang.d1[b] * P;
    }
  } else {
    const Vec3d& k = frame.kappa;
    const Mat3d kx = skew(k);
    const Mat3d tx = skew(t);
    const Eigen::RowVector3d kxt = k.cross(t).transpose();
    for (int b = 0; b < mid.value.size(); ++b) {
      op.axial.middleCols<3>(3 * b) = mid.d1[b] * P;
      op.bending.middleCols<3>(3 * b) = Q * (mid.d1[b] * kx + mid.d2[b] * tx);
      op.twist.middleCols<3>(3 * b) = -mid.d1[b] * (t * kxt);
    }
    for (int b = 0; b < ang.value.size(); ++b) {
      op.bending.col(off + b) = ang.value[b] * (Q * k);
      op.twist.col(off + b) = ang.d1[b] * t;
    }
  }
  return op;
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> assemble_stiffness(const BeamModel& model, const Discretization& disc, unsigned terms) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const auto& mesh = disc.mesh;
  if (std::abs(mesh.length() - model.curve.length()) > 1e-9 * model.curve.length())
    throw ValidationError("assemble_stiffness: mesh length does not match curve length");
  const TermQuadrature tq = quadrature(disc.formulation, disc.policy);
  const int n = disc.dofs.local_size();
  const double EA = model.material.E * model.section.area;
  const double GA = model.material.G * model.section.area;
  const double GJ = model.material.G * model.section.polar;
  const double E = model.material.E;

  std::vector<Eigen::Triplet<Scalar>> trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_elements()) * n * n);
  Mat Ke(n, n);

  for (int e = 0; e < mesh.num_elements(); ++e) {
    const Element el = mesh.element(e);
    Ke.setZero();
    if (terms & (kStretch | kShear)) {
      const QuadratureRule rule = element_rule(el, tq.stretch_shear);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const FrameSample fr = eval_frame(model.curve, rule.points[q]);
        const PointOperators op = point_operators(fr, disc, el);
        const Scalar w = rule.weights[q];
        if (terms & kStretch) {
          const Mat B = op.axial.cast<Scalar>();
          Ke.noalias() += (w * Scalar(EA)) * B.transpose() * B;
        }
        if ((terms & kShear) && !disc.formulation.euler_bernoulli()) {
          const Mat B = op.shear.cast<Scalar>();
          Ke.noalias() += (w * Scalar(GA)) * B.transpose() * B;
        }
      }
    }
    if (terms & (kBend | kTwist)) {
      const QuadratureRule rule = element_rule(el, tq.bend_twist);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const FrameSample fr = eval_frame(model.curve, rule.points[q]);
        const PointOperators op = point_operators(fr, disc, el);
        const Scalar w = rule.weights[q];
        if (terms & kBend) {
          const Mat B = op.bending.cast<Scalar>();
          const Mat D = (w * Scalar(E)) * inertia_tensor(model.section, fr.t).cast<Scalar>();
          Ke.noalias() += B.transpose() * D * B;
        }
        if (terms & kTwist) {
          const Mat B = op.twist.cast<Scalar>();
          Ke.noalias() += (w * Scalar(GJ)) * B.transpose() * B;
        }
      }
    }
    const auto dofs = disc.dofs.element_dofs(e);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (Ke(i, j) != Scalar(0)) trip.emplace_back(dofs[i], dofs[j], Ke(i, j));
  }
  Eigen::SparseMatrix<Scalar> K(disc.dofs.num_dofs(), disc.dofs.num_dofs());
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

template Eigen::SparseMatrix<double> assemble_stiffness<double>(const BeamModel&, const Discretization&, unsigned);
template Eigen::SparseMatrix<long double> assemble_stiffness<long double>(const BeamModel&, const Discretization&,
                                                                          unsigned);

namespace {

struct EndInfo {
  int node;
  double sign;
  FrameSample frame;
};

EndInfo end_info(const BeamModel& model, const Discretization& disc, bool at_end) {
  const int node = at_end ? disc.mesh.num_nodes() - 1 : 0;
  return {node, at_end ? 1.0 : -1.0, eval_frame(model.curve, at_end ? model.curve.length() : 0.0)};
}

Vec3d project_normal(const Vec3d& v, const Vec3d& t, const char* what, const char* which,
                     std::vector<std::string>* warnings) {
  const double along = t.dot(v);
  if (std::abs(along) > 1e-12 * std::max(1.0, v.norm()) && warnings)
    warnings->push_back(std::string(which) + " " + what + " has a tangential component " + std::to_string(along) +
                        "; projected onto the normal plane");
  return v - t * along;
}

}  // namespace

PointLoad end_load(const BeamModel& model, bool at_end, std::vector<std::string>* warnings) {
  const BoundaryCondition& bc = at_end ? model.end : model.start;
  const PointLoad& pl = at_end ? model.loads.end : model.loads.start;
  const char* which = at_end ? "end" : "start";
  const double sign = at_end ? 1.0 : -1.0;
  const Vec3d t = eval_frame(model.curve, at_end ? model.curve.length() : 0.0).t;

  PointLoad out = pl;
  if (bc.stretch.condition == Condition::Natural) out.force += sign * bc.stretch.value * t;
  if (bc.shear.condition == Condition::Natural)
    out.force += sign * project_normal(bc.shear.value, t, "shear force", which, warnings);
  if (bc.bend.condition == Condition::Natural)
    out.moment += sign * project_normal(bc.bend.value, t, "bending moment", which, warnings);
  if (bc.twist.condition == Condition::Natural) out.moment += sign * bc.twist.value * t;
  return out;
}

namespace {

void add_end_terms(Eigen::VectorXd& rhs, const BeamModel& model, const Discretization& disc, bool at_end,
                   std::vector<std::string>* warnings) {
  const EndInfo ei = end_info(model, disc, at_end);
  const Vec3d& t = ei.frame.t;
  const bool eb = disc.formulation.euler_bernoulli();
  const auto& dm = disc.dofs;
  const PointLoad load = end_load(model, at_end, warnings);
  const Vec3d& force = load.force;
  const Vec3d& moment = load.moment;

  for (int c = 0; c < 3; ++c) rhs[dm.node_dof(Field::Midline, ei.node, c)] += force[c];
  if (!eb) {
    for (int c = 0; c < 3; ++c) rhs[dm.node_dof(Field::Angle, ei.node, c)] += moment[c];
  } else {
    // eta = t x v' + t eta_t, so M . eta = v' . (M x t) + (M . t) eta_t
    const Vec3d mxt = moment.cross(t);
    for (int c = 0; c < 3; ++c) rhs[dm.node_dof(Field::Midline, ei.node, c, 1)] += mxt[c];
    rhs[dm.node_dof(Field::Angle, ei.node, 0)] += moment.dot(t);
  }
}

}  // namespace

Eigen::VectorXd assemble_load(const BeamModel& model, const Discretization& disc, std::vector<std::string>* warnings) {
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(disc.dofs.num_dofs());
  const TermQuadrature tq = quadrature(disc.formulation, disc.policy);
  const double A = model.section.area;
  if (model.loads.body) {
    for (int e = 0; e < disc.mesh.num_elements(); ++e) {
      const Element el = disc.mesh.element(e);
      const QuadratureRule rule = element_rule(el, tq.load);
      const auto dofs = disc.dofs.element_dofs(e);
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const Vec3d f = model.loads.body(rule.points[q]);
        if (!f.allFinite()) throw ValidationError("assemble_load: body force is not finite");
        const ShapeValues sv = shape_eval(disc.formulation.midline, el, rule.points[q], 1);
        for (int b = 0; b < sv.value.size(); ++b)
          for (int c = 0; c < 3; ++c) rhs[dofs[3 * b + c]] += rule.weights[q] * A * f[c] * sv.value[b];
      }
    }
  }
  add_end_terms(rhs, model, disc, false, warnings);
  add_end_terms(rhs, model, disc, true, warnings);
  return rhs;
}

namespace {

void end_constraints(const BeamModel& model, const Discretization& disc, bool at_end,
                     std::vector<ConstraintRow>& out, std::vector<std::string>* warnings) {
  const EndInfo ei = end_info(model, disc, at_end);
  const BoundaryCondition& bc = at_end ? model.end : model.start;
  const std::string which = at_end ? "end" : "start";
  const Vec3d& t = ei.frame.t;
  const auto [n1, n2] = normal_basis(t);
  const bool eb = disc.formulation.euler_bernoulli();
  const auto& dm = disc.dofs;

  auto vector_row = [&](Field field, int deriv, const Vec3d& dir, double value, const std::string& label) {
    ConstraintRow r;
    for (int c = 0; c < 3; ++c)
      if (dir[c] != 0.0) r.coefficients.emplace_back(dm.node_dof(field, ei.node, c, deriv), dir[c]);
    r.value = value;
    r.label = which + "." + label;
    out.push_back(std::move(r));
  };

  if (bc.stretch.condition == Condition::Essential) vector_row(Field::Midline, 0, t, bc.stretch.value, "u_t");
  if (bc.shear.condition == Condition::Essential) {
    const Vec3d v = project_normal(bc.shear.value, t, "prescribed normal displacement", which.c_str(), warnings);
    vector_row(Field::Midline, 0, n1, n1.dot(v), "Qu.n1");
    vector_row(Field::Midline, 0, n2, n2.dot(v), "Qu.n2");
  }
  if (bc.bend.condition == Condition::Essential) {
    const Vec3d v = project_normal(bc.bend.value, t, "prescribed bending rotation", which.c_str(), warnings);
    if (!eb) {
      vector_row(Field::Angle, 0, n1, n1.dot(v), "Qtheta.n1");
      vector_row(Field::Angle, 0, n2, n2.dot(v), "Qtheta.n2");
    } else {
      // n . (t x u') = u' . (n x t)
      vector_row(Field::Midline, 1, n1.cross(t), n1.dot(v), "Qtheta.n1");
      vector_row(Field::Midline, 1, n2.cross(t), n2.dot(v), "Qtheta.n2");
    }
  }
  if (bc.twist.condition == Condition::Essential) {
    if (!eb) {
      vector_row(Field::Angle, 0, t, bc.twist.value, "theta_t");
    } else {
      ConstraintRow r;
      r.coefficients.emplace_back(dm.node_dof(Field::Angle, ei.node, 0), 1.0);
      r.value = bc.twist.value;
      r.label = which + ".theta_t";
      out.push_back(std::move(r));
    }
  }
  for (std::size_t g = 0; g < bc.guided.size(); ++g) {
    if (bc.guided[g].norm() == 0) throw ValidationError(which + ": zero guided direction");
    vector_row(Field::Midline, 0, bc.guided[g].normalized(), 0.0, "guided" + std::to_string(g));
  }
}

}  // namespace

std::vector<ConstraintRow> essential_constraints(const BeamModel& model, const Discretization& disc,
                                                 std::vector<std::string>* warnings) {
  std::vector<ConstraintRow> raw;
  end_constraints(model, disc, false, raw, warnings);
  end_constraints(model, disc, true, raw, warnings);

  // Gram-Schmidt over the rows to find duplicates; the value is carried along
  // so a dependent row must reproduce its value from the kept rows.
  const int n = disc.dofs.num_dofs();
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> basis_val;
  std::vector<ConstraintRow> kept;
  for (auto& row : raw) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (auto [j, c] : row.coefficients) v[j] += c;
    double g = row.value;
    const double norm0 = v.norm();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double p = basis[k].dot(v);
      v -= p * basis[k];
      g -= p * basis_val[k];
    }
    const double norm = v.norm();
    if (norm <= 1e-10 * norm0) {
      if (std::abs(g) > 1e-10 * std::max(1.0, std::abs(row.value)))
        throw ConstraintConflictError("constraint " + row.label + " contradicts earlier essential conditions");
      continue;
    }
    basis.push_back(v / norm);
    basis_val.push_back(g / norm);
    kept.push_back(std::move(row));
  }
  return kept;
}

std::vector<Eigen::VectorXd> zero_energy_modes(const Discretization& disc) {
  std::vector<Eigen::VectorXd> modes;
  const Formulation& f = disc.formulation;
  if (f.euler_bernoulli() || f.midline != ScalarSpace::H3 || quadrature(f, disc.policy).stretch_shear != 2) return modes;
  for (int c = 0; c < 3; ++c) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(disc.dofs.num_dofs());
    for (int i = 0; i < disc.mesh.num_nodes(); ++i) m[disc.dofs.node_dof(Field::Midline, i, c, 1)] = 1.0;
    modes.push_back(std::move(m));
  }
  return modes;
}

std::vector<ConstraintRow> zero_energy_constraints(const BeamModel& model, const Discretization& disc) {
  std::vector<ConstraintRow> rows;
  const auto modes = zero_energy_modes(disc);
  if (modes.empty()) return rows;
  const Discretization full(disc.mesh, disc.formulation.kind, QuadraturePolicy::Full);
  const Eigen::SparseMatrix<double> K = assemble_stiffness<double>(model, full, kStretch | kShear);
  for (std::size_t c = 0; c < modes.size(); ++c) {
    const Eigen::VectorXd g = K * modes[c];
    const double scale = g.cwiseAbs().maxCoeff();
    ConstraintRow r;
    r.compliance = modes[c].dot(g) / (scale * scale);
    for (Eigen::Index j = 0; j < g.size(); ++j)
      if (std::abs(g[j]) > 1e-14 * scale) r.coefficients.emplace_back(static_cast<int>(j), g[j] / scale);
    r.label = "zero_energy." + std::string(1, "xyz"[c]);
    rows.push_back(std::move(r));
  }
  return rows;
}

template <typename Scalar>
BasicLinearSystem<Scalar> apply_essential_bcs(BasicLinearSystem<Scalar> system, const BeamModel& model,
                                              const Discretization& disc) {
  system.constraints = essential_constraints(model, disc, &system.warnings);
  const auto extra = zero_energy_constraints(model, disc);
  system.constraints.insert(system.constraints.end(), extra.begin(), extra.end());
  return system;
}

template <typename Scalar>
BasicLinearSystem<Scalar> assemble(const BeamModel& model, const Discretization& disc) {
  BasicLinearSystem<Scalar> sys;
  sys.K = assemble_stiffness<Scalar>(model, disc);
  sys.rhs = assemble_load(model, disc, &sys.warnings).template cast<Scalar>();
  return apply_essential_bcs(std::move(sys), model, disc);
}

template BasicLinearSystem<double> apply_essential_bcs(BasicLinearSystem<double>, const BeamModel&,
                                                       const Discretization&);
template BasicLinearSystem<long double> apply_essential_bcs(BasicLinearSystem<long double>, const BeamModel&,
                                                            const Discretization&);
template BasicLinearSystem<double> assemble<double>(const BeamModel&, const Discretization&);
template BasicLinearSystem<long double> assemble<long double>(const BeamModel&, const Discretization&);

}  // namespace cbeam
