// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ndfem {

namespace {

using Triplet = Eigen::Triplet<double>;

// Reference-element tables at the quadrature points of a rule.
struct RefTables {
  int nd = 0;
  std::vector<double> values;   // [q * nd + k]
  std::vector<Vec2> gradients;  // [q * nd + k]
  std::vector<Mat2> hessians;   // [q * nd + k]

  RefTables(int degree, const QuadratureRule& rule, bool need_hessian) {
    nd = lagrange::dofs_per_cell(degree);
    const int nq = rule.size();
    values.resize(static_cast<size_t>(nq) * nd);
    gradients.resize(static_cast<size_t>(nq) * nd);
    if (need_hessian) hessians.resize(static_cast<size_t>(nq) * nd);
    for (int q = 0; q < nq; ++q) {
      lagrange::shape_values(degree, rule.points[q], {values.data() + q * nd, (size_t)nd});
      lagrange::shape_gradients(degree, rule.points[q], {gradients.data() + q * nd, (size_t)nd});
      if (need_hessian)
        lagrange::shape_hessians(degree, rule.points[q], {hessians.data() + q * nd, (size_t)nd});
    }
  }
};

// Deterministic parallel triplet emission: contiguous chunks whose
// buffers are concatenated in chunk order, so the final triplet list is
// independent of the thread count.
template <typename Emit>
std::vector<Triplet> emit_parallel(int n_items, int n_threads, Emit emit) {
  n_threads = std::max(1, std::min(n_threads, n_items == 0 ? 1 : n_items));
  std::vector<std::vector<Triplet>> buffers(n_threads);
  if (n_threads == 1) {
    for (int i = 0; i < n_items; ++i) emit(i, buffers[0]);
  } else {
    std::vector<std::thread> workers;
    const int chunk = (n_items + n_threads - 1) / n_threads;
    for (int c = 0; c < n_threads; ++c) {
      const int begin = c * chunk;
      const int end = std::min(n_items, begin + chunk);
      workers.emplace_back([&, c, begin, end] {
        for (int i = begin; i < end; ++i) emit(i, buffers[c]);
      });
    }
    for (auto& w : workers) w.join();
  }
  std::vector<Triplet> all;
  size_t total = 0;
  for (const auto& b : buffers) total += b.size();
  all.reserve(total);
  for (const auto& b : buffers) all.insert(all.end(), b.begin(), b.end());
  return all;
}

enum class CellForm { mass, divform, nondiv_volume, h2_cell };

// Per-cell contributions of the standard bilinear forms.
void emit_cell(const FESpace& space, const CoefficientField* A, CellForm form,
               const QuadratureRule& rule, const RefTables& tab,
               const std::vector<int>& row_index, const std::vector<int>& col_index, int t,
               std::vector<Triplet>& out) {
  const Mesh& mesh = space.mesh();
  const int nd = tab.nd;
  const auto dofs = space.cell_dofs(t);
  const double jac = 2.0 * mesh.cell_area(t);
  const Mat2 jinv = mesh.jacobian(t).inverse();
  const Mat2 jinv_t = jinv.transpose();

  std::array<Vec2, 10> gphys;
  std::array<Mat2, 10> hphys;
  for (int q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * jac;
    const double* N = tab.values.data() + static_cast<size_t>(q) * nd;
    const Vec2* G = tab.gradients.data() + static_cast<size_t>(q) * nd;
    Mat2 a = Mat2::identity();
    if (A) a = (*A)(mesh.to_physical(t, rule.points[q]));

    switch (form) {
      case CellForm::mass:
        for (int i = 0; i < nd; ++i) {
          const int ri = row_index[dofs[i]];
          if (ri < 0) continue;
          for (int j = 0; j < nd; ++j) {
            const int cj = col_index[dofs[j]];
            if (cj >= 0) out.emplace_back(ri, cj, w * N[i] * N[j]);
          }
        }
        break;
      case CellForm::divform:
        for (int k = 0; k < nd; ++k) gphys[k] = jinv_t.apply(G[k]);
        for (int i = 0; i < nd; ++i) {
          const int ri = row_index[dofs[i]];
          if (ri < 0) continue;
          for (int j = 0; j < nd; ++j) {
            const int cj = col_index[dofs[j]];
            if (cj >= 0) out.emplace_back(ri, cj, w * gphys[i].dot(a.apply(gphys[j])));
          }
        }
        break;
      case CellForm::nondiv_volume: {
        const Mat2* H = tab.hessians.data() + static_cast<size_t>(q) * nd;
        std::array<double, 10> lphi;  // -A : D^2 phi_j
        for (int k = 0; k < nd; ++k) {
          const Mat2 hp = jinv_t * H[k] * jinv;
          lphi[k] = -a.contract(hp);
        }
        for (int i = 0; i < nd; ++i) {
          const int ri = row_index[dofs[i]];
          if (ri < 0) continue;
          for (int j = 0; j < nd; ++j) {
            const int cj = col_index[dofs[j]];
            if (cj >= 0) out.emplace_back(ri, cj, w * lphi[j] * N[i]);
          }
        }
        break;
      }
      case CellForm::h2_cell: {
        const Mat2* H = tab.hessians.data() + static_cast<size_t>(q) * nd;
        for (int k = 0; k < nd; ++k) hphys[k] = jinv_t * H[k] * jinv;
        for (int i = 0; i < nd; ++i) {
          const int ri = row_index[dofs[i]];
          if (ri < 0) continue;
          for (int j = 0; j < nd; ++j) {
            const int cj = col_index[dofs[j]];
            if (cj >= 0) out.emplace_back(ri, cj, w * hphys[i].contract(hphys[j]));
          }
        }
        break;
      }
    }
  }
}

struct IndexMaps {
  std::vector<int> index;  // dof -> system index (-1 dropped)
  int n = 0;
};

IndexMaps make_index(const FESpace& space, bool reduce) {
  IndexMaps m;
  m.index.resize(space.n_dofs());
  if (reduce) {
    for (int d = 0; d < space.n_dofs(); ++d) m.index[d] = space.free_index(d);
    m.n = space.n_free();
  } else {
    for (int d = 0; d < space.n_dofs(); ++d) m.index[d] = d;
    m.n = space.n_dofs();
  }
  return m;
}

AssembledOperator assemble_cell_form(const FESpace& space, const CoefficientField* A,
                                     CellForm form, OperatorKind kind,
                                     const AssemblyOptions& opts) {
  const int deg = opts.quadrature_degree > 0 ? opts.quadrature_degree : 2 * space.degree() + 2;
  const QuadratureRule rule = quad_triangle(deg);
  const bool need_h = (form == CellForm::nondiv_volume || form == CellForm::h2_cell);
  const RefTables tab(space.degree(), rule, need_h);
  const IndexMaps idx = make_index(space, opts.reduce);

  auto triplets = emit_parallel(space.mesh().n_cells(), opts.n_threads,
                                [&](int t, std::vector<Triplet>& out) {
                                  emit_cell(space, A, form, rule, tab, idx.index, idx.index, t, out);
                                });

  AssembledOperator op;
  op.kind = kind;
  op.space = &space;
  op.matrix.resize(idx.n, idx.n);
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

// Interior flux-jump term of the nonstandard operator:
//   sum_e <[A grad phi_j . nu_e], phi_i>_e  with [g] = g|T+ - g|T-.
void emit_nondiv_edges(const FESpace& space, const CoefficientField& A,
                       const QuadratureRule& rule, const std::vector<int>& index, int e,
                       std::vector<Triplet>& out) {
  const Mesh& mesh = space.mesh();
  const InteriorEdge& edge = mesh.interior_edges()[e];
  const int nd = space.dofs_per_cell();
  const int r = space.degree();
  const Vec2 a = mesh.vertices()[edge.v[0]];
  const Vec2 b = mesh.vertices()[edge.v[1]];
  const auto dofs_p = space.cell_dofs(edge.t_plus);
  const auto dofs_m = space.cell_dofs(edge.t_minus);
  const Mat2 jinvt_p = mesh.jacobian(edge.t_plus).inverse().transpose();
  const Mat2 jinvt_m = mesh.jacobian(edge.t_minus).inverse().transpose();

  std::array<double, 10> N;
  std::array<Vec2, 10> Gp, Gm;
  for (int q = 0; q < rule.size(); ++q) {
    const double t = rule.points[q].x;
    const Vec2 x = a * (1.0 - t) + b * t;
    const double w = rule.weights[q] * edge.length;
    const Mat2 coef = A(x);
    const Vec2 ref_p = mesh.to_reference(edge.t_plus, x);
    const Vec2 ref_m = mesh.to_reference(edge.t_minus, x);

    lagrange::shape_values(r, ref_p, {N.data(), (size_t)nd});
    lagrange::shape_gradients(r, ref_p, {Gp.data(), (size_t)nd});
    lagrange::shape_gradients(r, ref_m, {Gm.data(), (size_t)nd});

    // test functions are continuous: evaluate the trace from T+
    for (int i = 0; i < nd; ++i) {
      const int ri = index[dofs_p[i]];
      if (ri < 0 || N[i] == 0.0) continue;
      const double wv = w * N[i];
      for (int j = 0; j < nd; ++j) {
        const int cjp = index[dofs_p[j]];
        if (cjp >= 0)
          out.emplace_back(ri, cjp, wv * coef.apply(jinvt_p.apply(Gp[j])).dot(edge.normal));
        const int cjm = index[dofs_m[j]];
        if (cjm >= 0)
          out.emplace_back(ri, cjm, -wv * coef.apply(jinvt_m.apply(Gm[j])).dot(edge.normal));
      }
    }
  }
}

// Edge part of the squared broken H^2 Gram: h_e^{-1} <[grad w.nu],[grad v.nu]>_e;
// the edge-length weight and the h_e^{-1} factor cancel.
void emit_h2_edges(const FESpace& space, const QuadratureRule& rule,
                   const std::vector<int>& index, int e, std::vector<Triplet>& out) {
  const Mesh& mesh = space.mesh();
  const InteriorEdge& edge = mesh.interior_edges()[e];
  const int nd = space.dofs_per_cell();
  const int r = space.degree();
  const Vec2 a = mesh.vertices()[edge.v[0]];
  const Vec2 b = mesh.vertices()[edge.v[1]];
  const auto dofs_p = space.cell_dofs(edge.t_plus);
  const auto dofs_m = space.cell_dofs(edge.t_minus);
  const Mat2 jinvt_p = mesh.jacobian(edge.t_plus).inverse().transpose();
  const Mat2 jinvt_m = mesh.jacobian(edge.t_minus).inverse().transpose();

  std::array<Vec2, 10> Gp, Gm;
  // union of the two cells' DOFs with the signed normal-gradient jump
  std::array<int, 20> udof;
  std::array<double, 20> ujump;
  for (int q = 0; q < rule.size(); ++q) {
    const double t = rule.points[q].x;
    const Vec2 x = a * (1.0 - t) + b * t;
    const double w = rule.weights[q];
    lagrange::shape_gradients(r, mesh.to_reference(edge.t_plus, x), {Gp.data(), (size_t)nd});
    lagrange::shape_gradients(r, mesh.to_reference(edge.t_minus, x), {Gm.data(), (size_t)nd});

    int nu = 0;
    for (int k = 0; k < nd; ++k) {
      udof[nu] = dofs_p[k];
      ujump[nu] = jinvt_p.apply(Gp[k]).dot(edge.normal);
      ++nu;
    }
    for (int k = 0; k < nd; ++k) {
      const double val = -jinvt_m.apply(Gm[k]).dot(edge.normal);
      bool merged = false;
      for (int m = 0; m < nu; ++m)
        if (udof[m] == dofs_m[k]) {
          ujump[m] += val;
          merged = true;
          break;
        }
      if (!merged) {
        udof[nu] = dofs_m[k];
        ujump[nu] = val;
        ++nu;
      }
    }
    for (int i = 0; i < nu; ++i) {
      const int ri = index[udof[i]];
      if (ri < 0) continue;
      for (int j = 0; j < nu; ++j) {
        const int cj = index[udof[j]];
        if (cj >= 0) out.emplace_back(ri, cj, w * ujump[i] * ujump[j]);
      }
    }
  }
}

}  // namespace

AssembledOperator assemble_nondiv(const FESpace& space, const CoefficientField& A,
                                  const AssemblyOptions& opts) {
  const IndexMaps idx = make_index(space, opts.reduce);
  std::vector<Triplet> triplets;

  if (opts.volume_term) {
    const int deg = opts.quadrature_degree > 0 ? opts.quadrature_degree : 2 * space.degree() + 2;
    const QuadratureRule rule = quad_triangle(deg);
    const RefTables tab(space.degree(), rule, true);
    triplets = emit_parallel(space.mesh().n_cells(), opts.n_threads,
                             [&](int t, std::vector<Triplet>& out) {
                               emit_cell(space, &A, CellForm::nondiv_volume, rule, tab, idx.index,
                                         idx.index, t, out);
                             });
  }
  if (opts.edge_term) {
    const int edeg = opts.quadrature_degree > 0 ? opts.quadrature_degree : 2 * space.degree() + 1;
    const QuadratureRule erule = quad_edge(edeg);
    auto edge_trips =
        emit_parallel(static_cast<int>(space.mesh().interior_edges().size()), opts.n_threads,
                      [&](int e, std::vector<Triplet>& out) {
                        emit_nondiv_edges(space, A, erule, idx.index, e, out);
                      });
    triplets.insert(triplets.end(), edge_trips.begin(), edge_trips.end());
  }

  AssembledOperator op;
  op.kind = OperatorKind::nondiv;
  op.space = &space;
  op.matrix.resize(idx.n, idx.n);
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

AssembledOperator assemble_divform(const FESpace& space, const CoefficientField& A,
                                   const AssemblyOptions& opts) {
  return assemble_cell_form(space, &A, CellForm::divform, OperatorKind::divform, opts);
}

AssembledOperator assemble_mass(const FESpace& space, const AssemblyOptions& opts) {
  return assemble_cell_form(space, nullptr, CellForm::mass, OperatorKind::mass, opts);
}

AssembledOperator assemble_stiffness(const FESpace& space, const AssemblyOptions& opts) {
  return assemble_cell_form(space, nullptr, CellForm::divform, OperatorKind::stiffness, opts);
}

AssembledOperator assemble_h2_gram(const FESpace& space, const AssemblyOptions& opts) {
  AssembledOperator op =
      assemble_cell_form(space, nullptr, CellForm::h2_cell, OperatorKind::h2gram, opts);
  const IndexMaps idx = make_index(space, opts.reduce);
  const int edeg = opts.quadrature_degree > 0 ? opts.quadrature_degree : 2 * space.degree() + 1;
  const QuadratureRule erule = quad_edge(edeg);
  auto edge_trips =
      emit_parallel(static_cast<int>(space.mesh().interior_edges().size()), opts.n_threads,
                    [&](int e, std::vector<Triplet>& out) {
                      emit_h2_edges(space, erule, idx.index, e, out);
                    });
  SpMat edges(idx.n, idx.n);
  edges.setFromTriplets(edge_trips.begin(), edge_trips.end());
  op.matrix += edges;
  op.matrix.makeCompressed();
  return op;
}

std::vector<double> load_vector(const FESpace& space, const std::function<double(Vec2)>& f,
                                int quadrature_degree, bool reduce) {
  const int deg = quadrature_degree > 0 ? quadrature_degree : 2 * space.degree() + 2;
  const QuadratureRule rule = quad_triangle(deg);
  const RefTables tab(space.degree(), rule, false);
  const IndexMaps idx = make_index(space, reduce);
  const Mesh& mesh = space.mesh();
  const int nd = space.dofs_per_cell();
  std::vector<double> F(idx.n, 0.0);
  for (int t = 0; t < mesh.n_cells(); ++t) {
    const auto dofs = space.cell_dofs(t);
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * jac;
      const double fv = f(mesh.to_physical(t, rule.points[q]));
      const double* N = tab.values.data() + static_cast<size_t>(q) * nd;
      for (int i = 0; i < nd; ++i) {
        const int ri = idx.index[dofs[i]];
        if (ri >= 0) F[ri] += w * fv * N[i];
      }
    }
  }
  return F;
}

AssembledOperator adjoint(const AssembledOperator& op) {
  if (op.kind != OperatorKind::nondiv && op.kind != OperatorKind::adjoint_nondiv)
    throw std::invalid_argument("adjoint: operator kind must be nondiv");
  AssembledOperator out;
  out.kind = (op.kind == OperatorKind::nondiv) ? OperatorKind::adjoint_nondiv : OperatorKind::nondiv;
  out.space = op.space;
  out.matrix = op.matrix.transpose();
  out.matrix.makeCompressed();
  return out;
}

DGSpace::DGSpace(const Mesh& mesh, int degree) : mesh_(&mesh), degree_(degree) {
  if (degree < 1 || degree > lagrange::max_degree)
    throw std::invalid_argument("DGSpace: unsupported degree (must be 1, 2 or 3)");
}

Vec2 DGSpace::dof_point(int dof) const {
  const int nd = dofs_per_cell();
  const int cell = dof / nd;
  const auto nodes = lagrange::reference_nodes(degree_);
  return mesh_->to_physical(cell, nodes[dof % nd]);
}

DGFunction::DGFunction(std::shared_ptr<const DGSpace> space, std::vector<double> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != space_->n_dofs())
    throw std::invalid_argument("DGFunction: coefficient count mismatch");
}

double DGFunction::eval(int cell, Vec2 ref) const {
  const int nd = space_->dofs_per_cell();
  std::array<double, 10> N;
  lagrange::shape_values(space_->degree(), ref, {N.data(), (size_t)nd});
  double v = 0.0;
  for (int k = 0; k < nd; ++k) v += coeffs_[space_->cell_dof(cell, k)] * N[k];
  return v;
}

Vec2 DGFunction::eval_gradient(int cell, Vec2 ref) const {
  const int nd = space_->dofs_per_cell();
  std::array<Vec2, 10> G;
  lagrange::shape_gradients(space_->degree(), ref, {G.data(), (size_t)nd});
  const Mat2 jinv_t = space_->mesh().jacobian(cell).inverse().transpose();
  Vec2 g{0.0, 0.0};
  for (int k = 0; k < nd; ++k) g = g + G[k] * coeffs_[space_->cell_dof(cell, k)];
  return jinv_t.apply(g);
}

AssembledOperator assemble_dg(const Mesh& mesh, int degree, const CoefficientField& A,
                              const DGConfig& cfg, const AssemblyOptions& opts) {
  if (cfg.epsilon != 1 && cfg.epsilon != 0 && cfg.epsilon != -1)
    throw std::invalid_argument("assemble_dg: epsilon must be 1, 0 or -1");
  if (!(cfg.gamma0 > 0.0)) throw std::invalid_argument("assemble_dg: gamma0 must be positive");

  auto dg = std::make_shared<DGSpace>(mesh, degree);
  const int nd = dg->dofs_per_cell();
  const int r = degree;
  const double gamma_e = cfg.gamma0 * r * r;

  const int cdeg = opts.quadrature_degree > 0 ? opts.quadrature_degree : 2 * r + 2;
  const int edeg = opts.quadrature_degree > 0 ? opts.quadrature_degree : 2 * r + 1;
  const QuadratureRule crule = quad_triangle(cdeg);
  const QuadratureRule erule = quad_edge(edeg);
  const RefTables tab(r, crule, true);

  // broken volume term
  auto triplets = emit_parallel(mesh.n_cells(), opts.n_threads, [&](int t, std::vector<Triplet>& out) {
    const double jac = 2.0 * mesh.cell_area(t);
    const Mat2 jinv = mesh.jacobian(t).inverse();
    const Mat2 jinv_t = jinv.transpose();
    for (int q = 0; q < crule.size(); ++q) {
      const double w = crule.weights[q] * jac;
      const Mat2 a = A(mesh.to_physical(t, crule.points[q]));
      const double* N = tab.values.data() + static_cast<size_t>(q) * nd;
      const Mat2* H = tab.hessians.data() + static_cast<size_t>(q) * nd;
      std::array<double, 10> lphi;
      for (int k = 0; k < nd; ++k) lphi[k] = -a.contract(jinv_t * H[k] * jinv);
      for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
          out.emplace_back(dg->cell_dof(t, i), dg->cell_dof(t, j), w * lphi[j] * N[i]);
    }
  });

  // interior edges: flux jump against the average, adjoint term, penalty
  const auto& interior = mesh.interior_edges();
  auto itrips = emit_parallel(static_cast<int>(interior.size()), opts.n_threads,
                              [&](int e, std::vector<Triplet>& out) {
    const InteriorEdge& edge = interior[e];
    const Vec2 a = mesh.vertices()[edge.v[0]];
    const Vec2 b = mesh.vertices()[edge.v[1]];
    const Mat2 jinvt_p = mesh.jacobian(edge.t_plus).inverse().transpose();
    const Mat2 jinvt_m = mesh.jacobian(edge.t_minus).inverse().transpose();
    std::array<double, 10> Np, Nm;
    std::array<Vec2, 10> Gp, Gm;
    for (int q = 0; q < erule.size(); ++q) {
      const double t = erule.points[q].x;
      const Vec2 x = a * (1.0 - t) + b * t;
      const double w = erule.weights[q] * edge.length;
      const Mat2 coef = A(x);
      const Vec2 rp = mesh.to_reference(edge.t_plus, x);
      const Vec2 rm = mesh.to_reference(edge.t_minus, x);
      lagrange::shape_values(r, rp, {Np.data(), (size_t)nd});
      lagrange::shape_values(r, rm, {Nm.data(), (size_t)nd});
      lagrange::shape_gradients(r, rp, {Gp.data(), (size_t)nd});
      lagrange::shape_gradients(r, rm, {Gm.data(), (size_t)nd});

      // per-side DOF data: flux A grad phi . nu and trace
      std::array<double, 20> flux, trace, sign;
      std::array<int, 20> gdof;
      for (int k = 0; k < nd; ++k) {
        gdof[k] = dg->cell_dof(edge.t_plus, k);
        flux[k] = coef.apply(jinvt_p.apply(Gp[k])).dot(edge.normal);
        trace[k] = Np[k];
        sign[k] = 1.0;
        gdof[nd + k] = dg->cell_dof(edge.t_minus, k);
        flux[nd + k] = coef.apply(jinvt_m.apply(Gm[k])).dot(edge.normal);
        trace[nd + k] = Nm[k];
        sign[nd + k] = -1.0;
      }
      for (int i = 0; i < 2 * nd; ++i)
        for (int j = 0; j < 2 * nd; ++j) {
          // [A grad u . nu] {v}
          double val = w * (sign[j] * flux[j]) * (0.5 * trace[i]);
          // -eps {A grad v . nu} [u]
          val -= cfg.epsilon * w * (0.5 * flux[i]) * (sign[j] * trace[j]);
          // (gamma_e / h_e) [u][v]
          val += (gamma_e / edge.length) * w * (sign[j] * trace[j]) * (sign[i] * trace[i]);
          out.emplace_back(gdof[i], gdof[j], val);
        }
    }
  });
  triplets.insert(triplets.end(), itrips.begin(), itrips.end());

  // boundary edges: [w] = {w} = w; adjoint term and penalty only
  const auto& boundary = mesh.boundary_edges();
  auto btrips = emit_parallel(static_cast<int>(boundary.size()), opts.n_threads,
                              [&](int e, std::vector<Triplet>& out) {
    const BoundaryEdge& edge = boundary[e];
    const Vec2 a = mesh.vertices()[edge.v[0]];
    const Vec2 b = mesh.vertices()[edge.v[1]];
    const Mat2 jinvt = mesh.jacobian(edge.cell).inverse().transpose();
    std::array<double, 10> N;
    std::array<Vec2, 10> G;
    for (int q = 0; q < erule.size(); ++q) {
      const double t = erule.points[q].x;
      const Vec2 x = a * (1.0 - t) + b * t;
      const double w = erule.weights[q] * edge.length;
      const Mat2 coef = A(x);
      const Vec2 ref = mesh.to_reference(edge.cell, x);
      lagrange::shape_values(r, ref, {N.data(), (size_t)nd});
      lagrange::shape_gradients(r, ref, {G.data(), (size_t)nd});
      for (int i = 0; i < nd; ++i) {
        const int gi = dg->cell_dof(edge.cell, i);
        const double flux_i = coef.apply(jinvt.apply(G[i])).dot(edge.normal);
        for (int j = 0; j < nd; ++j) {
          const int gj = dg->cell_dof(edge.cell, j);
          double val = -cfg.epsilon * w * flux_i * N[j];
          val += (gamma_e / edge.length) * w * N[j] * N[i];
          out.emplace_back(gi, gj, val);
        }
      }
    }
  });
  triplets.insert(triplets.end(), btrips.begin(), btrips.end());

  AssembledOperator op;
  op.kind = OperatorKind::dg;
  op.dg_space = dg;
  op.dg_config = cfg;
  op.matrix.resize(dg->n_dofs(), dg->n_dofs());
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

std::vector<double> dg_load_vector(const DGSpace& space, const std::function<double(Vec2)>& f,
                                   int quadrature_degree) {
  const int r = space.degree();
  const int deg = quadrature_degree > 0 ? quadrature_degree : 2 * r + 2;
  const QuadratureRule rule = quad_triangle(deg);
  const RefTables tab(r, rule, false);
  const Mesh& mesh = space.mesh();
  const int nd = space.dofs_per_cell();
  std::vector<double> F(space.n_dofs(), 0.0);
  for (int t = 0; t < mesh.n_cells(); ++t) {
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * jac;
      const double fv = f(mesh.to_physical(t, rule.points[q]));
      const double* N = tab.values.data() + static_cast<size_t>(q) * nd;
      for (int i = 0; i < nd; ++i) F[space.cell_dof(t, i)] += w * fv * N[i];
    }
  }
  return F;
}

}  // namespace ndfem
