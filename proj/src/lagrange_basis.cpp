// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/lagrange_basis.hpp"

#include <array>

namespace ndfem {
namespace lagrange {

namespace {

void check_degree(int r) {
  if (r < 1 || r > max_degree) throw std::invalid_argument("lagrange: degree must be 1, 2 or 3");
}

// Barycentric gradients: lambda = (1-xi-eta, xi, eta).
constexpr std::array<Vec2, 3> kLambdaGrad = {Vec2{-1.0, -1.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};

// Shape functions are assembled from values and derivatives with
// respect to the barycentric coordinates; the chain rule with the
// constant kLambdaGrad maps them to reference coordinates.
struct LambdaDiff {
  double value = 0.0;
  std::array<double, 3> d{};            // d/d(lambda_k)
  std::array<std::array<double, 3>, 3> dd{};  // d2/d(lambda_k)d(lambda_l)
};

// One entry per local node, as functions of lambda.
void eval_lambda(int r, const std::array<double, 3>& L, std::span<LambdaDiff> out) {
  auto& l = L;
  if (r == 1) {
    for (int i = 0; i < 3; ++i) {
      out[i] = {};
      out[i].value = l[i];
      out[i].d[i] = 1.0;
    }
    return;
  }
  if (r == 2) {
    // vertices: l_i (2 l_i - 1)
    for (int i = 0; i < 3; ++i) {
      out[i] = {};
      out[i].value = l[i] * (2.0 * l[i] - 1.0);
      out[i].d[i] = 4.0 * l[i] - 1.0;
      out[i].dd[i][i] = 4.0;
    }
    // edge midpoints: 4 l_i l_j for edges (0,1), (1,2), (2,0)
    constexpr std::array<std::array<int, 2>, 3> edges = {{{0, 1}, {1, 2}, {2, 0}}};
    for (int e = 0; e < 3; ++e) {
      const int i = edges[e][0], j = edges[e][1];
      LambdaDiff& n = out[3 + e];
      n = {};
      n.value = 4.0 * l[i] * l[j];
      n.d[i] = 4.0 * l[j];
      n.d[j] = 4.0 * l[i];
      n.dd[i][j] = n.dd[j][i] = 4.0;
    }
    return;
  }
  // r == 3
  // vertices: (1/2) l_i (3 l_i - 1)(3 l_i - 2)
  for (int i = 0; i < 3; ++i) {
    out[i] = {};
    const double t = l[i];
    out[i].value = 0.5 * t * (3.0 * t - 1.0) * (3.0 * t - 2.0);
    out[i].d[i] = 0.5 * (27.0 * t * t - 18.0 * t + 2.0);
    out[i].dd[i][i] = 27.0 * t - 9.0;
  }
  // two nodes per edge: (9/2) l_i l_j (3 l_i - 1) at the node nearer i,
  // then (9/2) l_i l_j (3 l_j - 1)
  constexpr std::array<std::array<int, 2>, 3> edges = {{{0, 1}, {1, 2}, {2, 0}}};
  for (int e = 0; e < 3; ++e) {
    const int i = edges[e][0], j = edges[e][1];
    for (int k = 0; k < 2; ++k) {
      const int a = (k == 0) ? i : j;  // the "3 l_a - 1" factor
      const int b = (k == 0) ? j : i;
      LambdaDiff& n = out[3 + 2 * e + k];
      n = {};
      n.value = 4.5 * l[i] * l[j] * (3.0 * l[a] - 1.0);
      // N = (27/2) l_a^2 l_b - (9/2) l_a l_b
      n.d[a] = 27.0 * l[a] * l[b] - 4.5 * l[b];
      n.d[b] = 13.5 * l[a] * l[a] - 4.5 * l[a];
      n.dd[a][a] = 27.0 * l[b];
      n.dd[a][b] = n.dd[b][a] = 27.0 * l[a] - 4.5;
    }
  }
  // interior bubble: 27 l_0 l_1 l_2
  LambdaDiff& n = out[9];
  n = {};
  n.value = 27.0 * l[0] * l[1] * l[2];
  n.d[0] = 27.0 * l[1] * l[2];
  n.d[1] = 27.0 * l[0] * l[2];
  n.d[2] = 27.0 * l[0] * l[1];
  n.dd[0][1] = n.dd[1][0] = 27.0 * l[2];
  n.dd[0][2] = n.dd[2][0] = 27.0 * l[1];
  n.dd[1][2] = n.dd[2][1] = 27.0 * l[0];
}

std::array<double, 3> barycentric(Vec2 p) { return {1.0 - p.x - p.y, p.x, p.y}; }

}  // namespace

std::vector<Vec2> reference_nodes(int r) {
  check_degree(r);
  constexpr std::array<Vec2, 3> v = {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};
  std::vector<Vec2> nodes(v.begin(), v.end());
  constexpr std::array<std::array<int, 2>, 3> edges = {{{0, 1}, {1, 2}, {2, 0}}};
  for (const auto& e : edges)
    for (int k = 1; k < r; ++k) {
      const double t = static_cast<double>(k) / r;
      nodes.push_back(v[e[0]] * (1.0 - t) + v[e[1]] * t);
    }
  if (r == 3) nodes.push_back({1.0 / 3.0, 1.0 / 3.0});
  return nodes;
}

void shape_values(int r, Vec2 p, std::span<double> out) {
  check_degree(r);
  const int nd = dofs_per_cell(r);
  std::array<LambdaDiff, 10> buf;
  eval_lambda(r, barycentric(p), std::span<LambdaDiff>(buf.data(), nd));
  for (int k = 0; k < nd; ++k) out[k] = buf[k].value;
}

void shape_gradients(int r, Vec2 p, std::span<Vec2> out) {
  check_degree(r);
  const int nd = dofs_per_cell(r);
  std::array<LambdaDiff, 10> buf;
  eval_lambda(r, barycentric(p), std::span<LambdaDiff>(buf.data(), nd));
  for (int k = 0; k < nd; ++k) {
    Vec2 g{0.0, 0.0};
    for (int a = 0; a < 3; ++a) g = g + kLambdaGrad[a] * buf[k].d[a];
    out[k] = g;
  }
}

void shape_hessians(int r, Vec2 p, std::span<Mat2> out) {
  check_degree(r);
  const int nd = dofs_per_cell(r);
  std::array<LambdaDiff, 10> buf;
  eval_lambda(r, barycentric(p), std::span<LambdaDiff>(buf.data(), nd));
  for (int k = 0; k < nd; ++k) {
    Mat2 h{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double c = buf[k].dd[a][b];
        if (c == 0.0) continue;
        const Vec2 ga = kLambdaGrad[a];
        const Vec2 gb = kLambdaGrad[b];
        h.a00 += c * ga.x * gb.x;
        h.a01 += c * ga.x * gb.y;
        h.a10 += c * ga.y * gb.x;
        h.a11 += c * ga.y * gb.y;
      }
    out[k] = h;
  }
}

}  // namespace lagrange
}  // namespace ndfem
