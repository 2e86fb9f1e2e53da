// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include "ndfem/norms.hpp"

namespace ndfem {

struct SolveResult {
  FEFunction solution;
  double residual_norm = 0.0;  // relative algebraic residual
  bool factor_ok = false;
  AssembledOperator op;      // the assembled nondiv system
  std::vector<double> rhs;   // load vector over free DOFs
};

/// Solve (L_h u_h, v_h) = (f, v_h) for all v_h in V_h by sparse LU.
/// Throws SolverError (reporting h and r) if the factorization fails.
SolveResult solve(const ManufacturedProblem& problem, const FESpace& space);

/// max_i |(f, phi_i) - (L_h u_h, phi_i)| / ||F||_2 with a freshly
/// computed load vector; <= 1e-10 on any successful solve.
double galerkin_residual(const ManufacturedProblem& problem, const SolveResult& result);

struct ProbeOptions {
  int dense_threshold = 2000;   // free-DOF count at or below which the dense path runs
  double tol = 1e-8;            // relative eigenvalue convergence
  int max_iterations = 50000;
  uint64_t seed = 12345;
};

struct StabilityReport {
  double h = 0.0;
  int degree = 0;
  double sigma_h1 = 0.0;       // min ||L_h w||_{H_h^-1} / ||grad w||
  double sigma_h2 = 0.0;       // min ||L_h w||_{L_h^2} / ||w||_{H_h^2, squared}
  double sigma_adjoint = 0.0;  // sigma_h1 with L_h^*
  bool invertible = false;
  bool converged = false;      // eigenvalue iterations reached tolerance
};

/// Numerically probe the discrete stability constants: smallest
/// generalized singular values of B' K^{-1} B w = lambda K w (resp.
/// mass/broken-H2 Grams), by dense decomposition for small systems and
/// inverse iteration on the sparse forms otherwise.
StabilityReport stability_probe(const FESpace& space, const CoefficientField& A,
                                const ProbeOptions& opts = {});

/// True iff banded LU with partial pivoting succeeds with smallest
/// pivot magnitude > 1e-12 times the largest.
bool invertibility_check(const FESpace& space, const CoefficientField& A);
bool invertibility_check(const SpMat& matrix);

struct DGSolveResult {
  DGFunction solution;
  double residual_norm = 0.0;
  AssembledOperator op;
  std::vector<double> rhs;
};

/// Solve the IP-DG system over a discontinuous P_r space; boundary
/// conditions are imposed weakly by the epsilon and penalty terms.
DGSolveResult solve_dg(const ManufacturedProblem& problem, const Mesh& mesh, int degree,
                       const DGConfig& cfg);

}  // namespace ndfem
