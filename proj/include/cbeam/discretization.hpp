#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cbeam {

/// Scalar finite element spaces on an arc-length mesh.
///   P1: continuous piecewise linear, basis order [a, b]
///   P2: continuous piecewise quadratic, basis order [a, mid, b]
///   H3: C1 cubic Hermite, basis order [value a, d/ds a, value b, d/ds b]
enum class ScalarSpace { P1, P2, H3 };

int basis_count(ScalarSpace space);

enum class FormulationKind { TimoshenkoP2P1, TimoshenkoH3P2, EulerBernoulliH3 };

std::string_view to_string(FormulationKind kind);
std::optional<FormulationKind> formulation_from_string(std::string_view name);

struct Formulation {
  FormulationKind kind;
  ScalarSpace midline;
  ScalarSpace angle;
  int angle_components;  // 3 for the rotation vector, 1 for the Euler-Bernoulli twist angle

  static Formulation make(FormulationKind kind);
  bool euler_bernoulli() const { return kind == FormulationKind::EulerBernoulliH3; }
};

struct Element {
  int index;
  double s0;
  double s1;
  double h() const { return s1 - s0; }
};

class Mesh1D {
 public:
  explicit Mesh1D(std::vector<double> nodes);
  static Mesh1D uniform(double length, int elements);

  int num_elements() const { return static_cast<int>(nodes_.size()) - 1; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  double length() const { return nodes_.back(); }
  Element element(int e) const { return {e, nodes_[e], nodes_[e + 1]}; }
  /// Element containing s; interior nodes belong to the element on their left.
  int locate(double s) const;

 private:
  std::vector<double> nodes_;
};

struct ShapeValues {
  Eigen::VectorXd value;
  Eigen::VectorXd d1;  // d/ds
  Eigen::VectorXd d2;  // d^2/ds^2, only for H3
};

/// Basis functions of `space` on `element` at arc length s, with arc-length derivatives.
/// max_order = 2 is only available for H3.
ShapeValues shape_eval(ScalarSpace space, const Element& element, double s, int max_order = 1);

enum class Field { Midline, Angle };

/// Global numbering in mesh order: node 0, interior of element 0, node 1, ...
/// so the stiffness matrix is banded.
class DofMap {
 public:
  DofMap(const Mesh1D& mesh, const Formulation& formulation);

  int num_dofs() const { return num_dofs_; }
  int local_size() const { return local_size_; }
  /// Local layout: midline 3 * basis + comp, then angle offset + ncomp * basis + comp.
  std::span<const int> element_dofs(int e) const {
    return {element_dofs_.data() + static_cast<std::size_t>(e) * local_size_, static_cast<std::size_t>(local_size_)};
  }
  int angle_offset() const { return angle_offset_; }
  /// DOF of a nodal value (deriv = 0) or Hermite arc-length derivative (deriv = 1).
  int node_dof(Field field, int node, int comp, int deriv = 0) const;

 private:
  int num_dofs_ = 0;
  int local_size_ = 0;
  int angle_offset_ = 0;
  int mid_comps_ = 3;
  int ang_comps_ = 3;
  int per_node_ = 0;
  std::vector<int> node_base_;  // first dof of each node block
  std::vector<int> element_dofs_;
  Formulation formulation_;
};

enum class QuadraturePolicy { Full, Reduced };

std::string_view to_string(QuadraturePolicy policy);
std::optional<QuadraturePolicy> policy_from_string(std::string_view name);

/// Gauss point counts per term class. Reduced integration touches only the
/// stretch and shear terms.
struct TermQuadrature {
  int stretch_shear;
  int bend_twist;
  int load;
};

TermQuadrature quadrature(const Formulation& formulation, QuadraturePolicy policy);

/// Gauss points distributed along one element in arc length.
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

QuadratureRule element_rule(const Element& element, int n_points);

struct Discretization {
  Mesh1D mesh;
  Formulation formulation;
  QuadraturePolicy policy;
  DofMap dofs;

  Discretization(Mesh1D mesh, FormulationKind kind, QuadraturePolicy policy);
  static Discretization uniform(double length, FormulationKind kind, int elements,
                                QuadraturePolicy policy = QuadraturePolicy::Reduced);
};

}  // namespace cbeam
