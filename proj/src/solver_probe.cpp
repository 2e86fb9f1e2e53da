// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/solver_probe.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

namespace ndfem {

namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

// Smallest sigma of the pencil B' D^{-1} B w = sigma^2 P w via the
// congruent dense form T = L_D^{-1} B L_P^{-T}, sigma = sigma_min(T).
double dense_pencil_sigma(const SpMat& B, const SpMat& D, const SpMat& P) {
  const Eigen::MatrixXd Bd(B);
  const Eigen::MatrixXd Dd(D);
  const Eigen::MatrixXd Pd(P);
  Eigen::LLT<Eigen::MatrixXd> lltD(Dd);
  Eigen::LLT<Eigen::MatrixXd> lltP(Pd);
  if (lltD.info() != Eigen::Success || lltP.info() != Eigen::Success)
    throw FactorizationError("stability probe: Gram matrix not positive definite");
  const Eigen::MatrixXd X = lltD.matrixL().solve(Bd);
  const Eigen::MatrixXd T = lltP.matrixL().solve(X.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T.transpose() * T,
                                                     Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw FactorizationError("stability probe: dense eigensolver failed");
  return std::sqrt(std::max(eig.eigenvalues()(0), 0.0));
}

// Lanczos in the P-inner product applied to M = C^{-1} P with
// C = B' D^{-1} B. M is P-self-adjoint and positive definite, its
// largest eigenvalue is 1/lambda_min of the pencil (C, P), and Krylov
// convergence tolerates the eigenvalue clustering that stalls plain
// inverse iteration. Full reorthogonalization; P-products are cached.
double sparse_pencil_sigma(const SpMat& B, const SpMat& D, const SpMat& P,
                           const ProbeOptions& opts, bool& converged) {
  const SparseLUSolver luB(B);
  const SpMat BT = SpMat(B.transpose());
  const SparseLUSolver luBT(BT);
  const SpdSolver cholD(D);
  if (!luB.ok() || !luBT.ok() || !cholD.ok())
    throw FactorizationError("stability probe: sparse factorization failed");

  const Eigen::Index n = B.rows();
  const int max_steps = static_cast<int>(std::min<Eigen::Index>(
      n, std::max(8, std::min(opts.max_iterations, 400))));

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q[i] = unif(rng);

  Eigen::MatrixXd Q(n, max_steps);   // P-orthonormal Lanczos vectors
  Eigen::MatrixXd PQ(n, max_steps);  // P * Q, cached for reorthogonalization
  std::vector<double> alpha, beta;   // tridiagonal coefficients

  Eigen::VectorXd pq = P * q;
  q /= std::sqrt(q.dot(pq));
  Q.col(0) = q;
  PQ.col(0) = P * q;

  double theta = 0.0;
  int stalled = 0;
  converged = false;
  for (int j = 0; j < max_steps; ++j) {
    // z = M q_j = B^{-1} D B^{-T} (P q_j)
    Eigen::VectorXd z = luB.solve(D * luBT.solve(PQ.col(j)));
    alpha.push_back(z.dot(PQ.col(j)));

    // largest Ritz value of the tridiagonal section
    const int m = j + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      tri(k, k) = alpha[k];
      if (k + 1 < m) tri(k, k + 1) = tri(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri, Eigen::EigenvaluesOnly);
    const double theta_new = eig.eigenvalues()(m - 1);
    if (j >= 2 && std::abs(theta_new - theta) <= opts.tol * std::max(theta_new, 1e-300)) {
      if (++stalled >= 2) {
        theta = theta_new;
        converged = true;
        break;
      }
    } else {
      stalled = 0;
    }
    theta = theta_new;
    if (j + 1 == max_steps) break;

    // full reorthogonalization against all previous vectors
    z -= Q.leftCols(m) * (PQ.leftCols(m).transpose() * z);
    z -= Q.leftCols(m) * (PQ.leftCols(m).transpose() * z);
    const Eigen::VectorXd pz = P * z;
    const double b = std::sqrt(std::max(z.dot(pz), 0.0));
    if (!(b > 1e-14 * std::abs(alpha[j])) || !std::isfinite(b)) {
      converged = true;  // invariant subspace found
      break;
    }
    beta.push_back(b);
    Q.col(m) = z / b;
    PQ.col(m) = pz / b;
  }
  return theta > 0.0 ? std::sqrt(1.0 / theta) : 0.0;
}

double pencil_sigma(const SpMat& B, const SpMat& D, const SpMat& P, const ProbeOptions& opts,
                    bool& converged) {
  if (B.rows() <= opts.dense_threshold) {
    converged = true;
    return dense_pencil_sigma(B, D, P);
  }
  return sparse_pencil_sigma(B, D, P, opts, converged);
}

}  // namespace

SolveResult solve(const ManufacturedProblem& problem, const FESpace& space) {
  AssembledOperator op = assemble_nondiv(space, problem.coefficient);
  std::vector<double> rhs = load_vector(space, [&](Vec2 x) { return problem.forcing(x); });

  const SparseLUSolver lu(op.matrix);
  if (!lu.ok()) {
    std::ostringstream msg;
    msg << "solve: singular factorization at h = " << space.mesh().h_max()
        << ", r = " << space.degree();
    throw SolverError(msg.str());
  }
  const Eigen::VectorXd F = to_eigen(rhs);
  const Eigen::VectorXd u = lu.solve(F);
  const double fn = F.norm();
  const double res = fn > 0.0 ? (op.matrix * u - F).norm() / fn : (op.matrix * u).norm();

  SolveResult result{FEFunction::from_free(space, {u.data(), static_cast<size_t>(u.size())}),
                     res, true, std::move(op), std::move(rhs)};
  return result;
}

double galerkin_residual(const ManufacturedProblem& problem, const SolveResult& result) {
  const FESpace& space = result.solution.space();
  const std::vector<double> fresh = load_vector(space, [&](Vec2 x) { return problem.forcing(x); });
  const Eigen::VectorXd F = to_eigen(fresh);
  const Eigen::VectorXd u = to_eigen(result.solution.free_coeffs());
  const Eigen::VectorXd r = F - result.op.matrix * u;
  const double fn = F.norm();
  return fn > 0.0 ? r.lpNorm<Eigen::Infinity>() / fn : r.lpNorm<Eigen::Infinity>();
}

StabilityReport stability_probe(const FESpace& space, const CoefficientField& A,
                                const ProbeOptions& opts) {
  const AssembledOperator B = assemble_nondiv(space, A);
  const AssembledOperator K = assemble_stiffness(space);
  const AssembledOperator M = assemble_mass(space);
  const AssembledOperator G = assemble_h2_gram(space);

  StabilityReport report;
  report.h = space.mesh().h_max();
  report.degree = space.degree();
  report.invertible = invertibility_check(B.matrix);

  const SpMat BT = SpMat(B.matrix.transpose());
  bool c1 = false, c2 = false, c3 = false;
  report.sigma_h1 = pencil_sigma(B.matrix, K.matrix, K.matrix, opts, c1);
  report.sigma_adjoint = pencil_sigma(BT, K.matrix, K.matrix, opts, c2);
  report.sigma_h2 = pencil_sigma(B.matrix, M.matrix, G.matrix, opts, c3);
  report.converged = c1 && c2 && c3;
  return report;
}

bool invertibility_check(const SpMat& matrix) {
  try {
    const BandLU lu(matrix);
    if (!lu.ok()) return false;
    return lu.min_pivot() > 1e-12 * lu.max_pivot();
  } catch (const std::invalid_argument&) {
    // bandwidth guard: fall back to the pivoted sparse factorization
    const SparseLUSolver lu(matrix);
    return lu.ok();
  }
}

bool invertibility_check(const FESpace& space, const CoefficientField& A) {
  return invertibility_check(assemble_nondiv(space, A).matrix);
}

DGSolveResult solve_dg(const ManufacturedProblem& problem, const Mesh& mesh, int degree,
                       const DGConfig& cfg) {
  AssembledOperator op = assemble_dg(mesh, degree, problem.coefficient, cfg);
  std::vector<double> rhs =
      dg_load_vector(*op.dg_space, [&](Vec2 x) { return problem.forcing(x); });

  const SparseLUSolver lu(op.matrix);
  if (!lu.ok()) {
    std::ostringstream msg;
    msg << "solve_dg: singular factorization at h = " << mesh.h_max() << ", r = " << degree
        << ", epsilon = " << cfg.epsilon;
    throw SolverError(msg.str());
  }
  const Eigen::VectorXd F = to_eigen(rhs);
  const Eigen::VectorXd u = lu.solve(F);
  const double fn = F.norm();
  const double res = fn > 0.0 ? (op.matrix * u - F).norm() / fn : (op.matrix * u).norm();

  DGSolveResult result{
      DGFunction(op.dg_space, std::vector<double>(u.data(), u.data() + u.size())), res,
      std::move(op), std::move(rhs)};
  return result;
}

}  // namespace ndfem
