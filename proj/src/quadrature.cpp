// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/quadrature.hpp"

#include <cmath>

namespace ndfem {

namespace {

constexpr int kMaxDegree = 40;

// Legendre polynomial value and derivative on [-1,1].
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

void gauss_legendre_01(int g, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(g, 0.0);
  weights.assign(g, 0.0);
  for (int i = 0; i < g; ++i) {
    // Chebyshev initial guess, Newton refinement
    double x = std::cos(M_PI * (i + 0.75) / (g + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(g, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(g, x, p, dp);
    nodes[i] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], reversed order is harmless
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule quad_triangle(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::invalid_argument("quad_triangle: unsupported degree");
  // Duffy collapse of a tensor Gauss rule: x = a, y = b*(1-a),
  // dx dy = (1-a) da db. The (1-a) factor raises the a-degree by one.
  const int d = std::max(degree, 1);
  const int g = (d + 3) / 2;  // 2g-1 >= d+1
  std::vector<double> n1, w1;
  gauss_legendre_01(g, n1, w1);

  QuadratureRule rule;
  rule.dim = 2;
  rule.degree = degree;
  rule.points.reserve(static_cast<size_t>(g) * g);
  rule.weights.reserve(static_cast<size_t>(g) * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const double a = n1[i];
      const double b = n1[j];
      rule.points.push_back({a, b * (1.0 - a)});
      rule.weights.push_back(w1[i] * w1[j] * (1.0 - a));
    }
  return rule;
}

QuadratureRule quad_edge(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::invalid_argument("quad_edge: unsupported degree");
  const int d = std::max(degree, 1);
  const int g = (d + 2) / 2;  // 2g-1 >= d
  std::vector<double> n1, w1;
  gauss_legendre_01(g, n1, w1);

  QuadratureRule rule;
  rule.dim = 1;
  rule.degree = degree;
  rule.points.resize(g);
  rule.weights = w1;
  for (int i = 0; i < g; ++i) rule.points[i] = {n1[i], 0.0};
  return rule;
}

}  // namespace ndfem
