#include "cbeam/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include "cbeam/errors.hpp"

namespace cbeam {
namespace {

template <typename Scalar>
using SpMat = Eigen::SparseMatrix<Scalar>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
SpMat<Scalar> saddle_matrix(const BasicLinearSystem<Scalar>& sys) {
  const int n = sys.num_dofs();
  const int m = static_cast<int>(sys.constraints.size());
  std::vector<Eigen::Triplet<Scalar>> trip;
  trip.reserve(sys.K.nonZeros() + 2 * m * 6);
  for (int k = 0; k < sys.K.outerSize(); ++k)
    for (typename SpMat<Scalar>::InnerIterator it(sys.K, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int r = 0; r < m; ++r)
    for (auto [j, c] : sys.constraints[r].coefficients) {
      trip.emplace_back(n + r, j, Scalar(c));
      trip.emplace_back(j, n + r, Scalar(c));
    }
  for (int r = 0; r < m; ++r)
    if (sys.constraints[r].compliance > 0) trip.emplace_back(n + r, n + r, Scalar(-sys.constraints[r].compliance));
  SpMat<Scalar> A(n + m, n + m);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

template <typename Scalar>
double norm1(const SpMat<Scalar>& A) {
  double best = 0.0;
  for (int k = 0; k < A.outerSize(); ++k) {
    double col = 0.0;
    for (typename SpMat<Scalar>::InnerIterator it(A, k); it; ++it) col += std::abs(double(it.value()));
    best = std::max(best, col);
  }
  return best;
}

// Hager's estimate of |A^-1|_1 with Higham's extra test vector. A is symmetric,
// so the transposed solves reuse the same factorization.
template <typename Scalar, typename Solver>
double inverse_norm1_estimate(const Solver& lu, int n) {
  Vec<Scalar> x = Vec<Scalar>::Constant(n, Scalar(1) / n);
  double est = 0.0;
  int last = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Vec<Scalar> y = lu.solve(x);
    if (!y.allFinite()) return std::numeric_limits<double>::infinity();
    est = std::max(est, double(y.template lpNorm<1>()));
    const Vec<Scalar> xi = y.unaryExpr([](Scalar v) { return v >= 0 ? Scalar(1) : Scalar(-1); });
    const Vec<Scalar> z = lu.solve(xi);
    Eigen::Index j = 0;
    const Scalar zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x) || j == last) break;
    x.setZero();
    x[j] = 1;
    last = static_cast<int>(j);
  }
  Vec<Scalar> b(n);
  for (int i = 0; i < n; ++i) b[i] = (i % 2 ? -1.0 : 1.0) * (1.0 + (n > 1 ? double(i) / (n - 1) : 0.0));
  const Vec<Scalar> y = lu.solve(b);
  if (!y.allFinite()) return std::numeric_limits<double>::infinity();
  return std::max(est, 2.0 * double(y.template lpNorm<1>()) / (3.0 * n));
}

template <typename Scalar>
int nullity(const SpMat<Scalar>& A) {
  if (A.rows() > 4000) return -1;
  Eigen::FullPivLU<Eigen::MatrixXd> lu{Eigen::MatrixXd(A.template cast<double>())};
  lu.setThreshold(1e-10);
  return static_cast<int>(A.rows() - lu.rank());
}

template <typename Scalar>
[[noreturn]] void singular(const std::string& why, const SpMat<Scalar>& A) {
  const int modes = nullity(A);
  std::string msg = "singular system: " + why;
  if (modes >= 0) msg += "; " + std::to_string(modes) + " suspected rigid-body mode(s) are not restrained";
  throw SingularSystemError(msg, modes);
}

}  // namespace

template <typename Scalar>
BasicSolution<Scalar> solve(const BasicLinearSystem<Scalar>& system) {
  const int n = system.num_dofs();
  const int m = static_cast<int>(system.constraints.size());
  if (system.K.rows() != n || system.K.cols() != n) throw ValidationError("solve: stiffness and load sizes differ");

  const SpMat<Scalar> A = saddle_matrix(system);
  Vec<Scalar> rhs(n + m);
  rhs.head(n) = system.rhs;
  for (int r = 0; r < m; ++r) rhs[n + r] = system.constraints[r].value;

  // Symmetric equilibration by the largest entry of each row.
  Vec<Scalar> d = Vec<Scalar>::Zero(n + m);
  for (int k = 0; k < A.outerSize(); ++k)
    for (typename SpMat<Scalar>::InnerIterator it(A, k); it; ++it)
      d[it.row()] = std::max(d[it.row()], Scalar(std::abs(it.value())));
  for (int i = 0; i < n + m; ++i) d[i] = d[i] > 0 ? Scalar(1) / std::sqrt(d[i]) : Scalar(1);
  SpMat<Scalar> As = d.asDiagonal() * A * d.asDiagonal();
  As.makeCompressed();

  Eigen::SparseLU<SpMat<Scalar>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(As);
  lu.factorize(As);
  if (lu.info() != Eigen::Success) singular("factorization failed (zero pivot)", As);

  const double cond = norm1(As) * inverse_norm1_estimate<Scalar>(lu, n + m);
  if (!(cond <= 1e15)) singular("condition estimate " + std::to_string(cond) + " exceeds 1e15", As);

  auto apply = [&](const Vec<Scalar>& r) -> Vec<Scalar> { return d.asDiagonal() * Vec<Scalar>(lu.solve(d.asDiagonal() * r)); };
  Vec<Scalar> sol = apply(rhs);
  sol += apply(rhs - A * sol);  // one step of iterative refinement
  if (!sol.allFinite()) singular("non-finite solution", As);

  BasicSolution<Scalar> out;
  out.coefficients = sol.head(n);
  out.multipliers = sol.tail(m);
  const Vec<Scalar> res = A * sol - rhs;
  out.residual = double(res.head(n).norm());
  out.constraint_residual = double(res.tail(m).norm());
  out.condition_estimate = cond;
  return out;
}

template BasicSolution<double> solve(const BasicLinearSystem<double>&);
template BasicSolution<long double> solve(const BasicLinearSystem<long double>&);

SolvedModel solve_model(BeamModel model, Discretization disc) {
  BasicLinearSystem<Real> sys = assemble<Real>(model, disc);
  BasicSolution<Real> fields = solve(sys);
  return {std::move(model), std::move(disc), std::move(sys), std::move(fields)};
}

}  // namespace cbeam
