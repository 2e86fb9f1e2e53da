// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <memory>
#include <optional>

#include "ndfem/coefficients.hpp"
#include "ndfem/fe_space.hpp"
#include "ndfem/linear_solver.hpp"

namespace ndfem {

enum class OperatorKind { nondiv, adjoint_nondiv, divform, mass, stiffness, h2gram, dg };

struct DGConfig {
  int epsilon = 1;      // 1, 0 or -1
  double gamma0 = 10.0; // penalty scale; gamma_e = gamma0 * r^2
};

struct AssemblyOptions {
  bool volume_term = true;  // nondiv only: cell term -A:D^2
  bool edge_term = true;    // nondiv only: interior flux-jump term
  bool reduce = true;       // restrict to free DOFs (Dirichlet elimination)
  int n_threads = 1;
  int quadrature_degree = -1;  // default: 2r+2 on cells, 2r+1 on edges
};

/// Discontinuous P_r space over a mesh: per-cell DOF blocks, no
/// continuity, no boundary constraints.
class DGSpace {
 public:
  DGSpace(const Mesh& mesh, int degree);
  DGSpace(Mesh&&, int) = delete;  // the space references the mesh

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int dofs_per_cell() const { return lagrange::dofs_per_cell(degree_); }
  int n_dofs() const { return mesh_->n_cells() * dofs_per_cell(); }
  int cell_dof(int cell, int local) const { return cell * dofs_per_cell() + local; }
  Vec2 dof_point(int dof) const;

 private:
  const Mesh* mesh_;
  int degree_;
};

/// Piecewise polynomial over a DGSpace.
class DGFunction {
 public:
  DGFunction(std::shared_ptr<const DGSpace> space, std::vector<double> coeffs);

  const DGSpace& space() const { return *space_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double eval(int cell, Vec2 ref) const;
  Vec2 eval_gradient(int cell, Vec2 ref) const;

 private:
  std::shared_ptr<const DGSpace> space_;
  std::vector<double> coeffs_;
};

struct AssembledOperator {
  SpMat matrix;
  OperatorKind kind = OperatorKind::mass;
  const FESpace* space = nullptr;                 // conforming kinds
  std::shared_ptr<const DGSpace> dg_space;        // dg kind
  std::optional<DGConfig> dg_config;
};

/// Nonstandard operator of the C0 method:
///   B[i][j] = (-A : D_h^2 phi_j, phi_i)
///           + sum over interior edges of <[A grad phi_j . nu_e], phi_i>_e.
AssembledOperator assemble_nondiv(const FESpace& space, const CoefficientField& A,
                                  const AssemblyOptions& opts = {});

/// Divergence-form bilinear form (A grad u, grad v).
AssembledOperator assemble_divform(const FESpace& space, const CoefficientField& A,
                                   const AssemblyOptions& opts = {});

AssembledOperator assemble_mass(const FESpace& space, const AssemblyOptions& opts = {});
AssembledOperator assemble_stiffness(const FESpace& space, const AssemblyOptions& opts = {});

/// Gram matrix of the squared broken H^2 norm:
///   w' G w = sum_T |D^2 w|^2_{L2(T)} + sum_e h_e^{-1} |[grad w . nu_e]|^2_{L2(e)}.
AssembledOperator assemble_h2_gram(const FESpace& space, const AssemblyOptions& opts = {});

/// IP-DG form of the non-divergence operator over a discontinuous P_r
/// space: broken volume term, interior flux jump against {v}, the
/// epsilon-weighted adjoint term and the gamma_e/h_e penalty over the
/// full skeleton; on boundary edges [w] = {w} = w.
AssembledOperator assemble_dg(const Mesh& mesh, int degree, const CoefficientField& A,
                              const DGConfig& cfg, const AssemblyOptions& opts = {});
AssembledOperator assemble_dg(Mesh&&, int, const CoefficientField&, const DGConfig&,
                              const AssemblyOptions& = {}) = delete;

/// Load vector F[i] = (f, phi_i) over free DOFs (over all DOFs with
/// reduce = false).
std::vector<double> load_vector(const FESpace& space, const std::function<double(Vec2)>& f,
                                int quadrature_degree = -1, bool reduce = true);

/// Load vector over all DG DOFs.
std::vector<double> dg_load_vector(const DGSpace& space, const std::function<double(Vec2)>& f,
                                   int quadrature_degree = -1);

/// Adjoint operator (matrix transpose); input must be a nondiv operator.
AssembledOperator adjoint(const AssembledOperator& op);

}  // namespace ndfem
