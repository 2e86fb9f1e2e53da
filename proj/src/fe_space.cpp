// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/fe_space.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <map>

namespace ndfem {

FESpace::FESpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree < 1 || degree > lagrange::max_degree)
    throw std::invalid_argument("FESpace: unsupported degree (must be 1, 2 or 3)");

  const int r = degree;
  const int nv = mesh.n_vertices();
  const int per_edge = r - 1;
  const int per_cell_interior = (r - 1) * (r - 2) / 2;

  // deterministic edge numbering: sorted vertex pairs
  std::map<std::pair<int, int>, int> edge_rank;
  for (const auto& e : mesh.interior_edges()) edge_rank.emplace(std::pair{e.v[0], e.v[1]}, 0);
  for (const auto& e : mesh.boundary_edges())
    edge_rank.emplace(std::pair{std::min(e.v[0], e.v[1]), std::max(e.v[0], e.v[1])}, 0);
  int rank = 0;
  for (auto& [key, idx] : edge_rank) idx = rank++;
  const int ne = rank;

  const int n_total = nv + per_edge * ne + per_cell_interior * mesh.n_cells();
  dof_points_.resize(n_total);
  boundary_mask_.assign(n_total, 0);

  for (int v = 0; v < nv; ++v) dof_points_[v] = mesh.vertices()[v];
  for (const auto& [key, idx] : edge_rank) {
    const Vec2 a = mesh.vertices()[key.first];
    const Vec2 b = mesh.vertices()[key.second];
    for (int k = 1; k < r; ++k) {
      const double t = static_cast<double>(k) / r;
      dof_points_[nv + idx * per_edge + (k - 1)] = a * (1.0 - t) + b * t;
    }
  }

  const int nd = dofs_per_cell();
  cell_dofs_.resize(static_cast<size_t>(mesh.n_cells()) * nd);
  constexpr std::array<std::array<int, 2>, 3> local_edges = {{{0, 1}, {1, 2}, {2, 0}}};
  for (int t = 0; t < mesh.n_cells(); ++t) {
    int* dofs = cell_dofs_.data() + static_cast<size_t>(t) * nd;
    const auto& c = mesh.cells()[t];
    int pos = 0;
    for (int k = 0; k < 3; ++k) dofs[pos++] = c[k];
    for (const auto& le : local_edges) {
      const int a = c[le[0]];
      const int b = c[le[1]];
      const int base = nv + edge_rank.at({std::min(a, b), std::max(a, b)}) * per_edge;
      for (int k = 0; k < per_edge; ++k)
        dofs[pos++] = (a < b) ? base + k : base + (per_edge - 1 - k);
    }
    if (per_cell_interior == 1) {
      const int dof = nv + per_edge * ne + t;
      const auto vtx = mesh.cell_vertices(t);
      dof_points_[dof] = (vtx[0] + vtx[1] + vtx[2]) * (1.0 / 3.0);
      dofs[pos++] = dof;
    }
  }

  for (const auto& be : mesh.boundary_edges()) {
    boundary_mask_[be.v[0]] = 1;
    boundary_mask_[be.v[1]] = 1;
    const int base =
        nv + edge_rank.at({std::min(be.v[0], be.v[1]), std::max(be.v[0], be.v[1])}) * per_edge;
    for (int k = 0; k < per_edge; ++k) boundary_mask_[base + k] = 1;
  }

  free_index_.assign(n_total, -1);
  for (int d = 0; d < n_total; ++d)
    if (!boundary_mask_[d]) {
      free_index_[d] = n_free_++;
      free_to_dof_.push_back(d);
    }

  edge_first_dof_.reserve(edge_rank.size());
  for (const auto& [key, idx] : edge_rank)
    edge_first_dof_.push_back({key, nv + idx * per_edge});
}

std::vector<int> FESpace::edge_dofs(int v0, int v1) const {
  const std::pair<int, int> key{std::min(v0, v1), std::max(v0, v1)};
  auto it = std::lower_bound(edge_first_dof_.begin(), edge_first_dof_.end(), key,
                             [](const auto& e, const auto& k) { return e.first < k; });
  if (it == edge_first_dof_.end() || it->first != key)
    throw std::invalid_argument("edge_dofs: no such mesh edge");
  std::vector<int> dofs = {key.first, key.second};
  for (int k = 0; k < degree_ - 1; ++k) dofs.push_back(it->second + k);
  return dofs;
}

FEFunction::FEFunction(const FESpace& space, std::vector<double> coeffs)
    : space_(&space), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != space.n_dofs())
    throw std::invalid_argument("FEFunction: coefficient count mismatch");
}

FEFunction FEFunction::zero(const FESpace& space) {
  return FEFunction(space, std::vector<double>(space.n_dofs(), 0.0));
}

double FEFunction::eval(int cell, Vec2 ref) const {
  const int nd = space_->dofs_per_cell();
  std::array<double, 10> N;
  lagrange::shape_values(space_->degree(), ref, {N.data(), static_cast<size_t>(nd)});
  const auto dofs = space_->cell_dofs(cell);
  double v = 0.0;
  for (int k = 0; k < nd; ++k) v += coeffs_[dofs[k]] * N[k];
  return v;
}

Vec2 FEFunction::eval_gradient(int cell, Vec2 ref) const {
  const int nd = space_->dofs_per_cell();
  std::array<Vec2, 10> G;
  lagrange::shape_gradients(space_->degree(), ref, {G.data(), static_cast<size_t>(nd)});
  const Mat2 jinv_t = space_->mesh().jacobian(cell).inverse().transpose();
  const auto dofs = space_->cell_dofs(cell);
  Vec2 g{0.0, 0.0};
  for (int k = 0; k < nd; ++k) g = g + G[k] * coeffs_[dofs[k]];
  return jinv_t.apply(g);
}

Mat2 FEFunction::eval_hessian(int cell, Vec2 ref) const {
  const int nd = space_->dofs_per_cell();
  std::array<Mat2, 10> H;
  lagrange::shape_hessians(space_->degree(), ref, {H.data(), static_cast<size_t>(nd)});
  const auto dofs = space_->cell_dofs(cell);
  Mat2 href{};
  for (int k = 0; k < nd; ++k) href = href + H[k].scaled(coeffs_[dofs[k]]);
  const Mat2 jinv = space_->mesh().jacobian(cell).inverse();
  return jinv.transpose() * href * jinv;
}

std::vector<double> FEFunction::free_coeffs() const {
  std::vector<double> out(space_->n_free());
  for (int k = 0; k < space_->n_free(); ++k) out[k] = coeffs_[space_->free_to_dof(k)];
  return out;
}

FEFunction FEFunction::from_free(const FESpace& space, std::span<const double> free) {
  if (static_cast<int>(free.size()) != space.n_free())
    throw std::invalid_argument("from_free: size mismatch");
  std::vector<double> coeffs(space.n_dofs(), 0.0);
  for (int k = 0; k < space.n_free(); ++k) coeffs[space.free_to_dof(k)] = free[k];
  return FEFunction(space, std::move(coeffs));
}

FEFunction interpolate(const FESpace& space, const std::function<double(Vec2)>& g,
                       bool zero_boundary) {
  std::vector<double> coeffs(space.n_dofs());
  for (int d = 0; d < space.n_dofs(); ++d) {
    const double v = g(space.dof_point(d));
    if (!std::isfinite(v)) throw EvaluationError("interpolate: non-finite sample value");
    coeffs[d] = v;
  }
  if (zero_boundary)
    for (int d = 0; d < space.n_dofs(); ++d)
      if (space.is_boundary(d)) coeffs[d] = 0.0;
  return FEFunction(space, std::move(coeffs));
}

namespace {

// Shared projection core; evaluates the target via (cell, ref, phys).
FEFunction project_impl(const FESpace& space,
                        const std::function<double(int, Vec2, Vec2)>& target,
                        const std::optional<std::vector<int>>& cells) {
  const Mesh& mesh = space.mesh();
  std::vector<char> in_domain(mesh.n_cells(), 1);
  if (cells.has_value()) {
    if (cells->empty()) throw std::invalid_argument("l2_project: empty subdomain");
    in_domain.assign(mesh.n_cells(), 0);
    for (int t : *cells) {
      if (t < 0 || t >= mesh.n_cells()) throw std::invalid_argument("l2_project: bad cell index");
      in_domain[t] = 1;
    }
  }

  // DOFs of V_h(D): free DOFs whose entire support lies in D
  std::vector<char> usable(space.n_dofs(), 1);
  for (int t = 0; t < mesh.n_cells(); ++t)
    if (!in_domain[t])
      for (int d : space.cell_dofs(t)) usable[d] = 0;
  std::vector<int> sys_index(space.n_dofs(), -1);
  std::vector<int> sys_dofs;
  for (int d = 0; d < space.n_dofs(); ++d)
    if (usable[d] && !space.is_boundary(d)) {
      sys_index[d] = static_cast<int>(sys_dofs.size());
      sys_dofs.push_back(d);
    }
  if (sys_dofs.empty())
    throw std::invalid_argument("l2_project: subdomain supports no degrees of freedom");
  const int n = static_cast<int>(sys_dofs.size());

  const int nd = space.dofs_per_cell();
  const QuadratureRule rule = quad_triangle(2 * space.degree() + 2);
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  std::vector<double> N(nd);
  for (int t = 0; t < mesh.n_cells(); ++t) {
    if (!in_domain[t]) continue;
    const auto dofs = space.cell_dofs(t);
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      lagrange::shape_values(space.degree(), rule.points[q], N);
      const double w = rule.weights[q] * jac;
      const Vec2 phys = mesh.to_physical(t, rule.points[q]);
      const double wval = target(t, rule.points[q], phys);
      for (int i = 0; i < nd; ++i) {
        const int gi = sys_index[dofs[i]];
        if (gi < 0) continue;
        rhs[gi] += w * wval * N[i];
        for (int j = 0; j < nd; ++j) {
          const int gj = sys_index[dofs[j]];
          if (gj >= 0) trips.emplace_back(gi, gj, w * N[i] * N[j]);
        }
      }
    }
  }

  Eigen::SparseMatrix<double> M(n, n);
  M.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(M);
  if (chol.info() != Eigen::Success)
    throw FactorizationError("l2_project: mass matrix factorization failed");
  const Eigen::VectorXd z = chol.solve(rhs);

  std::vector<double> coeffs(space.n_dofs(), 0.0);
  for (int k = 0; k < n; ++k) coeffs[sys_dofs[k]] = z[k];
  return FEFunction(space, std::move(coeffs));
}

}  // namespace

FEFunction l2_project(const FESpace& space, const std::function<double(Vec2)>& w,
                      std::optional<std::vector<int>> cells) {
  return project_impl(
      space, [&w](int, Vec2, Vec2 phys) { return w(phys); }, cells);
}

FEFunction l2_project(const FESpace& space, const FEFunction& w,
                      std::optional<std::vector<int>> cells) {
  if (&w.space() != &space) {
    // evaluate through physical coordinates when spaces differ
    if (&w.space().mesh() != &space.mesh())
      throw std::invalid_argument("l2_project: functions on different meshes");
  }
  return project_impl(
      space, [&w](int cell, Vec2 ref, Vec2) { return w.eval(cell, ref); }, cells);
}

}  // namespace ndfem
