#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "cbeam/errors.hpp"

namespace cbeam {

/// Gauss-Legendre rule on the unit interval [0, 1].
template <typename Scalar = double>
struct GaussRule {
  std::vector<Scalar> points;
  std::vector<Scalar> weights;

  std::size_t size() const { return points.size(); }
};

/// n-point Gauss-Legendre rule on [0, 1]; exact for polynomials of degree 2n - 1.
/// Nodes are found by Newton iteration on P_n starting from the Chebyshev guess.
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: need at least one point");
  GaussRule<Scalar> rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        Scalar pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < Scalar(1e-17)) break;
    }
    // recompute derivative at the converged node
    Scalar p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      Scalar pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    Scalar w = 2 / ((1 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    rule.points[i] = (1 - x) / 2;
    rule.points[n - 1 - i] = (1 + x) / 2;
    rule.weights[i] = w / 2;
    rule.weights[n - 1 - i] = w / 2;
  }
  return rule;
}

/// Integrate f over [a, b] with an n-point Gauss rule.
template <typename F, typename Scalar = double>
Scalar integrate(F&& f, Scalar a, Scalar b, int n) {
  const auto rule = gauss_legendre<Scalar>(n);
  Scalar sum = 0;
  for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(a + (b - a) * rule.points[q]);
  return sum * (b - a);
}

}  // namespace cbeam
