// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ndfem/core.hpp"

namespace ndfem {

/// Scalar field with analytic derivatives.
struct ScalarField {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<Mat2(Vec2)> hessian;
};

enum class Smoothness { constant, smooth, hoelder };

/// x -> symmetric 2x2 SPD matrix A(x) with declared ellipticity bounds
/// lambda <= eig(A(x)) <= Lambda on the closed unit square.
class CoefficientField {
 public:
  CoefficientField(std::function<Mat2(Vec2)> evaluate, double lambda_min, double lambda_max,
                   Smoothness smoothness);

  Mat2 operator()(Vec2 x) const { return evaluate_(x); }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  Smoothness smoothness() const { return smoothness_; }

 private:
  std::function<Mat2(Vec2)> evaluate_;
  double lambda_min_;
  double lambda_max_;
  Smoothness smoothness_;
};

CoefficientField identity_A();
CoefficientField constant_A(const Mat2& M);
/// [[1 + 0.5 sin(pi x) sin(pi y), 0.1 x y], [0.1 x y, 1 + 0.5 cos(pi x) cos(pi y)]]
CoefficientField smooth_A();
/// I + 0.5 rho^alpha diag(1, -1), rho = |x - (0.5, 0.5)|: continuous but
/// not differentiable at the center; eigenvalues 1 +- 0.5 rho^alpha.
CoefficientField hoelder_A(double alpha);

/// Manufactured problem -A:D^2 u = f on (0,1)^2 with u = 0 on the
/// boundary; the forcing is always derived from (A, u).
struct ManufacturedProblem {
  std::string name;
  CoefficientField coefficient;
  ScalarField exact_u;
  double regularity_s;  // Sobolev index of u; infinity for smooth u

  double forcing(Vec2 x) const {
    const Mat2 a = coefficient(x);
    const Mat2 h = exact_u.hessian(x);
    return -a.contract(h);
  }
};

/// Validates that u vanishes on the boundary (sampled) before pairing
/// it with the coefficient.
ManufacturedProblem make_problem(std::string name, CoefficientField A, ScalarField u,
                                 double regularity_s);

/// Extremal sampled eigenvalues of A over a uniform resolution x
/// resolution grid on the closed unit square. Throws EllipticityError,
/// naming the sample point, if a sample leaves [lambda-tol, Lambda+tol].
std::pair<double, double> verify_ellipticity(const CoefficientField& A, int resolution);

/// Problem catalog: identity-sin, smooth-sin, hoelder-sin, identity-poly,
/// smooth-poly, hoelder-poly, constant-poly, identity-reduced.
/// beta controls the reduced-regularity exponent u = (x(1-x)y(1-y))^(1+beta).
ManufacturedProblem problem_by_name(const std::string& name, double beta = 0.75);

/// Names understood by problem_by_name, in catalog order.
std::vector<std::string> problem_names();

}  // namespace ndfem
