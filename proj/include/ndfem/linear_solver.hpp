// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <memory>

#include "ndfem/core.hpp"

namespace ndfem {

/// Row-compressed sparse matrix with sorted column indices.
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SpMatCol = Eigen::SparseMatrix<double>;

/// Direct sparse LU with partial pivoting (COLAMD column ordering).
class SparseLUSolver {
 public:
  explicit SparseLUSolver(const SpMat& A);

  bool ok() const { return ok_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  Eigen::SparseLU<SpMatCol> lu_;
  bool ok_ = false;
};

/// Sparse LDL^T for symmetric positive definite Gram matrices.
class SpdSolver {
 public:
  explicit SpdSolver(const SpMat& A);

  bool ok() const { return ok_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  Eigen::SimplicialLDLT<SpMatCol> chol_;
  bool ok_ = false;
};

/// LU factorization with partial pivoting in LAPACK-style band storage.
/// Gives direct access to the pivot magnitudes, which the invertibility
/// check needs; intended for desk-scale matrices.
class BandLU {
 public:
  explicit BandLU(const SpMat& A);

  bool ok() const { return ok_; }
  double min_pivot() const { return min_pivot_; }
  double max_pivot() const { return max_pivot_; }

 private:
  bool ok_ = false;
  double min_pivot_ = 0.0;
  double max_pivot_ = 0.0;
};

}  // namespace ndfem
