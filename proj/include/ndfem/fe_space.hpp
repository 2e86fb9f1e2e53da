// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ndfem/lagrange_basis.hpp"
#include "ndfem/mesh.hpp"
#include "ndfem/quadrature.hpp"

namespace ndfem {

/// Continuous Lagrange space V_h^r (r = 1, 2, 3) with homogeneous
/// Dirichlet flags on boundary DOFs. DOF order: vertices, then edge
/// nodes (per mesh edge, from the lower to the higher vertex index),
/// then cell-interior nodes.
class FESpace {
 public:
  FESpace(const Mesh& mesh, int degree);
  FESpace(Mesh&&, int) = delete;  // the space references the mesh

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int n_dofs() const { return static_cast<int>(dof_points_.size()); }
  int n_free() const { return n_free_; }
  int dofs_per_cell() const { return lagrange::dofs_per_cell(degree_); }

  std::span<const int> cell_dofs(int t) const {
    const int nd = dofs_per_cell();
    return {cell_dofs_.data() + static_cast<size_t>(t) * nd, static_cast<size_t>(nd)};
  }
  Vec2 dof_point(int dof) const { return dof_points_[dof]; }
  bool is_boundary(int dof) const { return boundary_mask_[dof] != 0; }
  /// Index into the reduced (free-DOF) system, or -1 for boundary DOFs.
  int free_index(int dof) const { return free_index_[dof]; }
  int free_to_dof(int k) const { return free_to_dof_[k]; }

  /// Global DOFs on the closed edge (v0,v1): the two endpoint vertex
  /// DOFs followed by the edge-interior nodes ordered from the lower
  /// vertex index.
  std::vector<int> edge_dofs(int v0, int v1) const;

 private:
  const Mesh* mesh_;
  int degree_;
  std::vector<Vec2> dof_points_;
  std::vector<int> cell_dofs_;
  std::vector<char> boundary_mask_;
  std::vector<int> free_index_;
  std::vector<int> free_to_dof_;
  int n_free_ = 0;
  // mesh-edge lookup for edge_dofs
  std::vector<std::pair<std::pair<int, int>, int>> edge_first_dof_;  // sorted by vertex pair
};

/// Piecewise polynomial with one coefficient per global DOF of a space.
class FEFunction {
 public:
  FEFunction(const FESpace& space, std::vector<double> coeffs);
  static FEFunction zero(const FESpace& space);

  const FESpace& space() const { return *space_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& coeffs() { return coeffs_; }

  double eval(int cell, Vec2 ref) const;
  /// Physical gradient of the local restriction.
  Vec2 eval_gradient(int cell, Vec2 ref) const;
  /// Physical (broken) Hessian D_h^2 of the local restriction;
  /// identically zero for degree 1.
  Mat2 eval_hessian(int cell, Vec2 ref) const;

  /// Restriction to the reduced system (free DOFs only).
  std::vector<double> free_coeffs() const;
  static FEFunction from_free(const FESpace& space, std::span<const double> free);

 private:
  const FESpace* space_;
  std::vector<double> coeffs_;
};

/// Nodal interpolant I_h g. With zero_boundary the boundary DOFs are
/// forced to 0 so the result lies in V_h. Throws EvaluationError on
/// non-finite samples.
FEFunction interpolate(const FESpace& space, const std::function<double(Vec2)>& g,
                       bool zero_boundary = false);

/// L2 projection P_h onto V_h(D): (P_h w, v_h)_D = (w, v_h)_D for all
/// v_h in V_h(D). D is the whole domain when cells is empty/omitted;
/// otherwise the union of the given cells, and the projection uses the
/// DOFs whose basis functions vanish outside D.
FEFunction l2_project(const FESpace& space, const std::function<double(Vec2)>& w,
                      std::optional<std::vector<int>> cells = std::nullopt);
FEFunction l2_project(const FESpace& space, const FEFunction& w,
                      std::optional<std::vector<int>> cells = std::nullopt);

}  // namespace ndfem
