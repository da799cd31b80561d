#include "cbeam/discretization.hpp"

#include <algorithm>
#include <cmath>

#include "cbeam/errors.hpp"
#include "cbeam/quadrature.hpp"

namespace cbeam {

int basis_count(ScalarSpace space) {
  switch (space) {
    case ScalarSpace::P1: return 2;
    case ScalarSpace::P2: return 3;
    case ScalarSpace::H3: return 4;
  }
  return 0;
}

std::string_view to_string(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::TimoshenkoP2P1: return "timoshenko_p2p1";
    case FormulationKind::TimoshenkoH3P2: return "timoshenko_h3p2";
    case FormulationKind::EulerBernoulliH3: return "euler_bernoulli_h3";
  }
  return "";
}

std::optional<FormulationKind> formulation_from_string(std::string_view name) {
  for (auto k : {FormulationKind::TimoshenkoP2P1, FormulationKind::TimoshenkoH3P2, FormulationKind::EulerBernoulliH3})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

Formulation Formulation::make(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::TimoshenkoP2P1: return {kind, ScalarSpace::P2, ScalarSpace::P1, 3};
    case FormulationKind::TimoshenkoH3P2: return {kind, ScalarSpace::H3, ScalarSpace::P2, 3};
    case FormulationKind::EulerBernoulliH3: return {kind, ScalarSpace::H3, ScalarSpace::P2, 1};
  }
  throw FormulationError("unknown formulation");
}

Mesh1D::Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ValidationError("mesh: need at least one element");
  if (nodes_.front() != 0.0) throw ValidationError("mesh: first node must be at s = 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw ValidationError("mesh: nodes must be strictly increasing");
}

Mesh1D Mesh1D::uniform(double length, int elements) {
  if (elements < 1) throw ValidationError("mesh: need at least one element");
  if (!(length > 0)) throw ValidationError("mesh: length must be positive");
  std::vector<double> nodes(elements + 1);
  for (int i = 0; i <= elements; ++i) nodes[i] = length * i / elements;
  nodes.back() = length;
  return Mesh1D(std::move(nodes));
}

int Mesh1D::locate(double s) const {
  auto it = std::lower_bound(nodes_.begin() + 1, nodes_.end(), s);
  if (it == nodes_.end()) return num_elements() - 1;
  return static_cast<int>(it - nodes_.begin()) - 1;
}

ShapeValues shape_eval(ScalarSpace space, const Element& element, double s, int max_order) {
  if (max_order >= 2 && space != ScalarSpace::H3)
    throw UnsupportedOrderError("shape_eval: second derivatives are only provided for H3");
  const double h = element.h();
  const double x = (s - element.s0) / h;
  const int n = basis_count(space);
  ShapeValues sv;
  sv.value.resize(n);
  sv.d1.resize(n);
  switch (space) {
    case ScalarSpace::P1:
      sv.value << 1 - x, x;
      sv.d1 << -1 / h, 1 / h;
      break;
    case ScalarSpace::P2:
      sv.value << (1 - x) * (1 - 2 * x), 4 * x * (1 - x), x * (2 * x - 1);
      sv.d1 << (4 * x - 3) / h, (4 - 8 * x) / h, (4 * x - 1) / h;
      break;
    case ScalarSpace::H3: {
      const double x2 = x * x, x3 = x2 * x;
      sv.value << 1 - 3 * x2 + 2 * x3, h * (x - 2 * x2 + x3), 3 * x2 - 2 * x3, h * (x3 - x2);
      sv.d1 << (6 * x2 - 6 * x) / h, 1 - 4 * x + 3 * x2, (6 * x - 6 * x2) / h, 3 * x2 - 2 * x;
      if (max_order >= 2) {
        sv.d2.resize(n);
        sv.d2 << (12 * x - 6) / (h * h), (6 * x - 4) / h, (6 - 12 * x) / (h * h), (6 * x - 2) / h;
      }
      break;
    }
  }
  return sv;
}

DofMap::DofMap(const Mesh1D& mesh, const Formulation& formulation)
    : ang_comps_(formulation.angle_components), formulation_(formulation) {
  const int mid_node = formulation.midline == ScalarSpace::H3 ? 2 * mid_comps_ : mid_comps_;
  const int ang_node = ang_comps_;
  const int mid_interior = formulation.midline == ScalarSpace::P2 ? mid_comps_ : 0;
  const int ang_interior = formulation.angle == ScalarSpace::P2 ? ang_comps_ : 0;
  per_node_ = mid_node + ang_node;

  const int ne = mesh.num_elements();
  std::vector<int> interior_base(ne);
  node_base_.resize(mesh.num_nodes());
  int next = 0;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    node_base_[i] = next;
    next += per_node_;
    if (i < ne) {
      interior_base[i] = next;
      next += mid_interior + ang_interior;
    }
  }
  num_dofs_ = next;

  const int nmid = basis_count(formulation.midline);
  const int nang = basis_count(formulation.angle);
  angle_offset_ = 3 * nmid;
  local_size_ = angle_offset_ + ang_comps_ * nang;
  element_dofs_.resize(static_cast<std::size_t>(ne) * local_size_);

  for (int e = 0; e < ne; ++e) {
    int* out = element_dofs_.data() + static_cast<std::size_t>(e) * local_size_;
    for (int c = 0; c < 3; ++c) {
      switch (formulation.midline) {
        case ScalarSpace::P1:
          out[0 + c] = node_base_[e] + c;
          out[3 + c] = node_base_[e + 1] + c;
          break;
        case ScalarSpace::P2:
          out[0 + c] = node_base_[e] + c;
          out[3 + c] = interior_base[e] + c;
          out[6 + c] = node_base_[e + 1] + c;
          break;
        case ScalarSpace::H3:
          out[0 + c] = node_base_[e] + c;
          out[3 + c] = node_base_[e] + 3 + c;
          out[6 + c] = node_base_[e + 1] + c;
          out[9 + c] = node_base_[e + 1] + 3 + c;
          break;
      }
    }
    for (int c = 0; c < ang_comps_; ++c) {
      int* a = out + angle_offset_;
      switch (formulation.angle) {
        case ScalarSpace::P1:
          a[c] = node_base_[e] + mid_node + c;
          a[ang_comps_ + c] = node_base_[e + 1] + mid_node + c;
          break;
        case ScalarSpace::P2:
          a[c] = node_base_[e] + mid_node + c;
          a[ang_comps_ + c] = interior_base[e] + mid_interior + c;
          a[2 * ang_comps_ + c] = node_base_[e + 1] + mid_node + c;
          break;
        case ScalarSpace::H3:
          throw FormulationError("Hermite angle spaces are not supported");
      }
    }
  }
}

int DofMap::node_dof(Field field, int node, int comp, int deriv) const {
  if (node < 0 || node >= static_cast<int>(node_base_.size())) throw DomainError("node_dof: node out of range");
  if (field == Field::Midline) {
    if (deriv == 1 && formulation_.midline != ScalarSpace::H3)
      throw FormulationError("node_dof: midline space has no derivative DOFs");
    return node_base_[node] + 3 * deriv + comp;
  }
  if (comp >= ang_comps_ || deriv != 0) throw FormulationError("node_dof: invalid angle DOF");
  const int mid_node = formulation_.midline == ScalarSpace::H3 ? 6 : 3;
  return node_base_[node] + mid_node + comp;
}

std::string_view to_string(QuadraturePolicy policy) {
  return policy == QuadraturePolicy::Full ? "full" : "reduced";
}

std::optional<QuadraturePolicy> policy_from_string(std::string_view name) {
  if (name == "full") return QuadraturePolicy::Full;
  if (name == "reduced") return QuadraturePolicy::Reduced;
  return std::nullopt;
}

TermQuadrature quadrature(const Formulation& formulation, QuadraturePolicy policy) {
  const int full = formulation.kind == FormulationKind::TimoshenkoP2P1 ? 3 : 4;
  const int reduced = formulation.euler_bernoulli() ? 3 : 2;
  return {policy == QuadraturePolicy::Reduced ? reduced : full, full, full};
}

QuadratureRule element_rule(const Element& element, int n_points) {
  const auto g = gauss_legendre<double>(n_points);
  QuadratureRule r;
  for (std::size_t q = 0; q < g.size(); ++q) {
    r.points.push_back(element.s0 + element.h() * g.points[q]);
    r.weights.push_back(element.h() * g.weights[q]);
  }
  return r;
}

Discretization::Discretization(Mesh1D m, FormulationKind kind, QuadraturePolicy p)
    : mesh(std::move(m)), formulation(Formulation::make(kind)), policy(p), dofs(mesh, formulation) {}

Discretization Discretization::uniform(double length, FormulationKind kind, int elements, QuadraturePolicy policy) {
  return Discretization(Mesh1D::uniform(length, elements), kind, policy);
}

}  // namespace cbeam
