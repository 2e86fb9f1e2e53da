// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/norms.hpp"

#include <cmath>

namespace ndfem {

ErrorTriple error_norms(const ManufacturedProblem& problem, const FEFunction& u_h,
                        int quadrature_degree) {
  const FESpace& space = u_h.space();
  const Mesh& mesh = space.mesh();
  const int deg = quadrature_degree > 0 ? quadrature_degree : 2 * space.degree() + 4;
  const QuadratureRule rule = quad_triangle(deg);

  double l2 = 0.0, h1 = 0.0, h2_cells = 0.0;
  for (int t = 0; t < mesh.n_cells(); ++t) {
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * jac;
      const Vec2 ref = rule.points[q];
      const Vec2 x = mesh.to_physical(t, ref);
      const double ev = problem.exact_u.value(x) - u_h.eval(t, ref);
      const Vec2 eg = problem.exact_u.gradient(x) - u_h.eval_gradient(t, ref);
      const Mat2 eh = problem.exact_u.hessian(x) - u_h.eval_hessian(t, ref);
      l2 += w * ev * ev;
      h1 += w * eg.dot(eg);
      h2_cells += w * eh.contract(eh);
    }
  }

  // jump part: the exact gradient is continuous, so only grad u_h jumps
  const QuadratureRule erule = quad_edge(2 * space.degree() + 1);
  double h2_edges = 0.0;
  for (const InteriorEdge& edge : mesh.interior_edges()) {
    const Vec2 a = mesh.vertices()[edge.v[0]];
    const Vec2 b = mesh.vertices()[edge.v[1]];
    for (int q = 0; q < erule.size(); ++q) {
      const double t = erule.points[q].x;
      const Vec2 x = a * (1.0 - t) + b * t;
      const Vec2 gp = u_h.eval_gradient(edge.t_plus, mesh.to_reference(edge.t_plus, x));
      const Vec2 gm = u_h.eval_gradient(edge.t_minus, mesh.to_reference(edge.t_minus, x));
      const double jump = (gp - gm).dot(edge.normal);
      // h_e^{-1} weight cancels against the edge-length measure
      h2_edges += erule.weights[q] * jump * jump;
    }
  }

  return {std::sqrt(l2), std::sqrt(h1), std::sqrt(h2_cells + h2_edges)};
}

DGError dg_error_norms(const ManufacturedProblem& problem, const DGFunction& u_h,
                       int quadrature_degree) {
  const DGSpace& space = u_h.space();
  const Mesh& mesh = space.mesh();
  const int deg = quadrature_degree > 0 ? quadrature_degree : 2 * space.degree() + 4;
  const QuadratureRule rule = quad_triangle(deg);

  double l2 = 0.0, h1 = 0.0;
  for (int t = 0; t < mesh.n_cells(); ++t) {
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * jac;
      const Vec2 ref = rule.points[q];
      const Vec2 x = mesh.to_physical(t, ref);
      const double ev = problem.exact_u.value(x) - u_h.eval(t, ref);
      const Vec2 eg = problem.exact_u.gradient(x) - u_h.eval_gradient(t, ref);
      l2 += w * ev * ev;
      h1 += w * eg.dot(eg);
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

double dg_l2_distance(const DGFunction& a, const FEFunction& b, int quadrature_degree) {
  const Mesh& mesh = a.space().mesh();
  if (&mesh != &b.space().mesh())
    throw std::invalid_argument("dg_l2_distance: functions live on different meshes");
  const int deg = quadrature_degree > 0
                      ? quadrature_degree
                      : 2 * std::max(a.space().degree(), b.space().degree()) + 2;
  const QuadratureRule rule = quad_triangle(deg);
  double acc = 0.0;
  for (int t = 0; t < mesh.n_cells(); ++t) {
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      const double d = a.eval(t, rule.points[q]) - b.eval(t, rule.points[q]);
      acc += rule.weights[q] * jac * d * d;
    }
  }
  return std::sqrt(acc);
}

GramSolver::GramSolver(const AssembledOperator& gram) : gram_(&gram), solver_(gram.matrix) {
  if (!solver_.ok())
    throw FactorizationError("GramSolver: Cholesky factorization of the Gram matrix failed");
}

double GramSolver::dual_norm(std::span<const double> F) const {
  const Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(F.data(), F.size());
  if (f.size() != gram_->matrix.rows())
    throw std::invalid_argument("dual_norm: functional size mismatch");
  const Eigen::VectorXd z = solver_.solve(f);
  const double v = f.dot(z);
  return std::sqrt(std::max(v, 0.0));
}

Eigen::VectorXd GramSolver::representer(std::span<const double> F) const {
  const Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(F.data(), F.size());
  return solver_.solve(f);
}

double dual_norm_hm1(std::span<const double> F, const AssembledOperator& K) {
  return GramSolver(K).dual_norm(F);
}

double dual_norm_l2h(std::span<const double> F, const AssembledOperator& M) {
  return GramSolver(M).dual_norm(F);
}

double operator_dual_norm(const AssembledOperator& B, std::span<const double> w,
                          const AssembledOperator& gram) {
  if (static_cast<Eigen::Index>(w.size()) != B.matrix.cols())
    throw std::invalid_argument("operator_dual_norm: vector size mismatch");
  const Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
  const Eigen::VectorXd F = B.matrix * wv;
  return GramSolver(gram).dual_norm({F.data(), static_cast<size_t>(F.size())});
}

}  // namespace ndfem
