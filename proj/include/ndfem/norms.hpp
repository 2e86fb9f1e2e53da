// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <span>

#include "ndfem/assemble.hpp"

namespace ndfem {

struct ErrorTriple {
  double l2 = 0.0;
  double h1 = 0.0;        // H1 seminorm of the error
  double h2_broken = 0.0; // squared-variant broken H2 norm of the error
};

/// Errors of a conforming approximation against the manufactured exact
/// solution. The broken H2 norm combines cell Hessian errors with the
/// h_e^{-1}-weighted normal gradient jumps of u_h (the exact gradient
/// does not jump).
ErrorTriple error_norms(const ManufacturedProblem& problem, const FEFunction& u_h,
                        int quadrature_degree = -1);

struct DGError {
  double l2 = 0.0;
  double h1_broken = 0.0;  // broken H1 seminorm
};

DGError dg_error_norms(const ManufacturedProblem& problem, const DGFunction& u_h,
                       int quadrature_degree = -1);

/// L2 distance between a DG function and a conforming function on the
/// same mesh.
double dg_l2_distance(const DGFunction& a, const FEFunction& b, int quadrature_degree = -1);

/// Cached Cholesky factorization of an SPD Gram matrix; computes
/// discrete dual norms exactly through the Riesz representer.
class GramSolver {
 public:
  explicit GramSolver(const AssembledOperator& gram);

  /// sqrt(F' G^{-1} F): the exact value of sup (F, v) / |v|_G.
  double dual_norm(std::span<const double> F) const;
  /// Riesz representer z with G z = F.
  Eigen::VectorXd representer(std::span<const double> F) const;
  const AssembledOperator& gram() const { return *gram_; }

 private:
  const AssembledOperator* gram_;
  SpdSolver solver_;
};

/// ||F||_{H_h^{-1}} = sup (F . v) / ||grad v_h||: K is the stiffness Gram.
double dual_norm_hm1(std::span<const double> F, const AssembledOperator& K);

/// ||F||_{L_h^2} = sup (F . v) / ||v_h||_{L^2}: M is the mass Gram.
double dual_norm_l2h(std::span<const double> F, const AssembledOperator& M);

/// Dual norm of B w, e.g. ||L_h w_h||_{H_h^{-1}} with the stiffness Gram.
double operator_dual_norm(const AssembledOperator& B, std::span<const double> w,
                          const AssembledOperator& gram);

}  // namespace ndfem
