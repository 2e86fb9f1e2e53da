// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ndfem {

SparseLUSolver::SparseLUSolver(const SpMat& A) {
  SpMatCol Ac(A);
  Ac.makeCompressed();
  lu_.compute(Ac);
  ok_ = (lu_.info() == Eigen::Success);
}

Eigen::VectorXd SparseLUSolver::solve(const Eigen::VectorXd& b) const {
  if (!ok_) throw FactorizationError("SparseLUSolver: factorization failed");
  return lu_.solve(b);
}

SpdSolver::SpdSolver(const SpMat& A) {
  SpMatCol Ac(A);
  Ac.makeCompressed();
  chol_.compute(Ac);
  ok_ = (chol_.info() == Eigen::Success);
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b) const {
  if (!ok_) throw FactorizationError("SpdSolver: factorization failed");
  return chol_.solve(b);
}

namespace {

// Reverse Cuthill-McKee ordering of the symmetrized sparsity graph,
// to keep the band narrow independently of the caller's DOF numbering.
std::vector<int> rcm_permutation(const SpMat& A) {
  const int n = static_cast<int>(A.rows());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < A.outerSize(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (r != c) {
        adj[r].push_back(c);
        adj[c].push_back(r);
      }
    }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  auto degree_less = [&](int a, int b) { return adj[a].size() < adj[b].size(); };
  for (int comp_start = 0; comp_start < n; ++comp_start) {
    if (visited[comp_start]) continue;
    // start from the lowest-degree node of the component
    int start = comp_start;
    for (int v = comp_start; v < n; ++v)
      if (!visited[v] && degree_less(v, start)) start = v;
    std::vector<int> queue = {start};
    visited[start] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      order.push_back(v);
      std::vector<int> next;
      for (int w : adj[v])
        if (!visited[w]) {
          visited[w] = 1;
          next.push_back(w);
        }
      std::sort(next.begin(), next.end(), degree_less);
      queue.insert(queue.end(), next.begin(), next.end());
    }
  }
  std::reverse(order.begin(), order.end());
  std::vector<int> perm(n);  // old index -> new position
  for (int k = 0; k < n; ++k) perm[order[k]] = k;
  return perm;
}

}  // namespace

BandLU::BandLU(const SpMat& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 0 || A.rows() != A.cols()) {
    ok_ = false;
    return;
  }
  const std::vector<int> perm = rcm_permutation(A);
  int kl = 0, ku = 0;
  for (int i = 0; i < A.outerSize(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      const int r = perm[it.row()];
      const int c = perm[it.col()];
      kl = std::max(kl, r - c);
      ku = std::max(ku, c - r);
    }
  // partial pivoting grows the upper band by kl
  const int ldab = 2 * kl + ku + 1;
  const size_t bytes = static_cast<size_t>(ldab) * n * sizeof(double);
  if (bytes > size_t{2} * 1024 * 1024 * 1024)
    throw std::invalid_argument("BandLU: bandwidth too large for banded factorization");

  // ab(kl + ku + i - j, j) = A(i, j), column-major bands
  std::vector<double> ab(static_cast<size_t>(ldab) * n, 0.0);
  auto entry = [&](int i, int j) -> double& {
    return ab[static_cast<size_t>(j) * ldab + (kl + ku + i - j)];
  };
  for (int r = 0; r < A.outerSize(); ++r)
    for (SpMat::InnerIterator it(A, r); it; ++it)
      entry(perm[it.row()], perm[it.col()]) += it.value();

  min_pivot_ = std::numeric_limits<double>::max();
  max_pivot_ = 0.0;
  for (int j = 0; j < n; ++j) {
    // pivot search in column j, rows j .. min(j+kl, n-1)
    const int last = std::min(j + kl, n - 1);
    int piv = j;
    double pmax = std::abs(entry(j, j));
    for (int i = j + 1; i <= last; ++i) {
      const double v = std::abs(entry(i, j));
      if (v > pmax) {
        pmax = v;
        piv = i;
      }
    }
    min_pivot_ = std::min(min_pivot_, pmax);
    max_pivot_ = std::max(max_pivot_, pmax);
    if (pmax == 0.0) {
      min_pivot_ = 0.0;
      ok_ = false;
      return;
    }
    const int jend = std::min(j + kl + ku, n - 1);
    if (piv != j)
      for (int c = j; c <= jend; ++c) std::swap(entry(j, c), entry(piv, c));
    const double d = entry(j, j);
    for (int i = j + 1; i <= last; ++i) {
      const double m = entry(i, j) / d;
      entry(i, j) = m;
      if (m == 0.0) continue;
      for (int c = j + 1; c <= jend; ++c) entry(i, c) -= m * entry(j, c);
    }
  }
  ok_ = true;
}

}  // namespace ndfem
