// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <vector>

#include "ndfem/core.hpp"

namespace ndfem {

/// Quadrature on the reference triangle {xi,eta >= 0, xi+eta <= 1}
/// (dim == 2, weights sum to 1/2) or the reference edge [0,1]
/// (dim == 1, points stored in x, weights sum to 1).
struct QuadratureRule {
  int dim = 2;
  int degree = 0;  // declared polynomial exactness
  std::vector<Vec2> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Rule exact for all bivariate polynomials of total degree <= degree,
/// built as a collapsed Gauss-Legendre product. All weights positive.
QuadratureRule quad_triangle(int degree);

/// Gauss-Legendre rule on [0,1], exact to the given degree.
QuadratureRule quad_edge(int degree);

/// Nodes and weights of the g-point Gauss-Legendre rule on [0,1].
void gauss_legendre_01(int g, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ndfem
