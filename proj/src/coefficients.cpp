// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/coefficients.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace ndfem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScalarField sin_sin_field() {
  ScalarField u;
  u.value = [](Vec2 p) { return std::sin(M_PI * p.x) * std::sin(M_PI * p.y); };
  u.gradient = [](Vec2 p) {
    return Vec2{M_PI * std::cos(M_PI * p.x) * std::sin(M_PI * p.y),
                M_PI * std::sin(M_PI * p.x) * std::cos(M_PI * p.y)};
  };
  u.hessian = [](Vec2 p) {
    const double pi2 = M_PI * M_PI;
    const double ss = std::sin(M_PI * p.x) * std::sin(M_PI * p.y);
    const double cc = std::cos(M_PI * p.x) * std::cos(M_PI * p.y);
    return Mat2{-pi2 * ss, pi2 * cc, pi2 * cc, -pi2 * ss};
  };
  return u;
}

ScalarField bubble_field() {
  ScalarField u;
  u.value = [](Vec2 p) { return p.x * (1.0 - p.x) * p.y * (1.0 - p.y); };
  u.gradient = [](Vec2 p) {
    return Vec2{(1.0 - 2.0 * p.x) * p.y * (1.0 - p.y), p.x * (1.0 - p.x) * (1.0 - 2.0 * p.y)};
  };
  u.hessian = [](Vec2 p) {
    const double xy = (1.0 - 2.0 * p.x) * (1.0 - 2.0 * p.y);
    return Mat2{-2.0 * p.y * (1.0 - p.y), xy, xy, -2.0 * p.x * (1.0 - p.x)};
  };
  return u;
}

// (x(1-x)y(1-y))^(1+beta): reduced regularity near the boundary.
ScalarField reduced_field(double beta) {
  const double p = 1.0 + beta;
  const ScalarField g = bubble_field();
  ScalarField u;
  u.value = [g, p](Vec2 x) { return std::pow(g.value(x), p); };
  u.gradient = [g, p](Vec2 x) {
    const double gp = std::pow(g.value(x), p - 1.0);
    return g.gradient(x) * (p * gp);
  };
  u.hessian = [g, p](Vec2 x) {
    const double gv = g.value(x);
    const Vec2 gg = g.gradient(x);
    const Mat2 gh = g.hessian(x);
    const double c1 = p * (p - 1.0) * std::pow(gv, p - 2.0);
    const double c2 = p * std::pow(gv, p - 1.0);
    return Mat2{c1 * gg.x * gg.x, c1 * gg.x * gg.y, c1 * gg.y * gg.x, c1 * gg.y * gg.y} +
           gh.scaled(c2);
  };
  return u;
}

}  // namespace

CoefficientField::CoefficientField(std::function<Mat2(Vec2)> evaluate, double lambda_min,
                                   double lambda_max, Smoothness smoothness)
    : evaluate_(std::move(evaluate)),
      lambda_min_(lambda_min),
      lambda_max_(lambda_max),
      smoothness_(smoothness) {
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
    throw std::invalid_argument("CoefficientField: ellipticity bounds must satisfy 0 < lambda <= Lambda");
}

CoefficientField identity_A() {
  return CoefficientField([](Vec2) { return Mat2::identity(); }, 1.0, 1.0, Smoothness::constant);
}

CoefficientField constant_A(const Mat2& M) {
  const double scale = std::max({std::abs(M.a00), std::abs(M.a01), std::abs(M.a10), std::abs(M.a11), 1.0});
  if (std::abs(M.a01 - M.a10) > 1e-14 * scale)
    throw std::invalid_argument("constant_A: matrix must be symmetric");
  const auto [lo, hi] = M.sym_eigenvalues();
  if (lo <= 0.0) throw std::invalid_argument("constant_A: matrix must be positive definite");
  return CoefficientField([M](Vec2) { return M; }, lo, hi, Smoothness::constant);
}

CoefficientField smooth_A() {
  auto eval = [](Vec2 p) {
    const double off = 0.1 * p.x * p.y;
    return Mat2{1.0 + 0.5 * std::sin(M_PI * p.x) * std::sin(M_PI * p.y), off, off,
                1.0 + 0.5 * std::cos(M_PI * p.x) * std::cos(M_PI * p.y)};
  };
  // min(a,b) - |c| >= 0.4, max(a,b) + |c| <= 1.6 on the unit square
  return CoefficientField(eval, 0.4, 1.6, Smoothness::smooth);
}

CoefficientField hoelder_A(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("hoelder_A: alpha must lie in (0,1)");
  auto eval = [alpha](Vec2 p) {
    const double rho = std::hypot(p.x - 0.5, p.y - 0.5);
    const double s = 0.5 * std::pow(rho, alpha);
    return Mat2{1.0 + s, 0.0, 0.0, 1.0 - s};
  };
  return CoefficientField(eval, 0.5, 1.5, Smoothness::hoelder);
}

ManufacturedProblem make_problem(std::string name, CoefficientField A, ScalarField u,
                                 double regularity_s) {
  if (!u.value || !u.gradient || !u.hessian)
    throw std::invalid_argument("make_problem: exact solution must supply value, gradient, Hessian");
  constexpr int k = 64;
  for (int i = 0; i <= k; ++i) {
    const double t = static_cast<double>(i) / k;
    for (const Vec2 p : {Vec2{t, 0.0}, Vec2{t, 1.0}, Vec2{0.0, t}, Vec2{1.0, t}}) {
      if (std::abs(u.value(p)) > 1e-12) {
        std::ostringstream msg;
        msg << "make_problem: exact solution does not vanish on the boundary at (" << p.x << ", "
            << p.y << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  return ManufacturedProblem{std::move(name), std::move(A), std::move(u), regularity_s};
}

std::pair<double, double> verify_ellipticity(const CoefficientField& A, int resolution) {
  if (resolution < 2) throw std::invalid_argument("verify_ellipticity: resolution must be >= 2");
  constexpr double tol = 1e-10;
  double lo = kInf, hi = -kInf;
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      const Vec2 p{static_cast<double>(i) / (resolution - 1),
                   static_cast<double>(j) / (resolution - 1)};
      const Mat2 a = A(p);
      const double scale = std::max({std::abs(a.a00), std::abs(a.a01), std::abs(a.a11), 1.0});
      if (std::abs(a.a01 - a.a10) > 1e-14 * scale) {
        std::ostringstream msg;
        msg << "verify_ellipticity: non-symmetric sample at (" << p.x << ", " << p.y << ")";
        throw EllipticityError(msg.str());
      }
      const auto [emin, emax] = a.sym_eigenvalues();
      if (emin < A.lambda_min() - tol || emax > A.lambda_max() + tol) {
        std::ostringstream msg;
        msg << "verify_ellipticity: eigenvalue range [" << emin << ", " << emax
            << "] outside declared bounds at (" << p.x << ", " << p.y << ")";
        throw EllipticityError(msg.str());
      }
      lo = std::min(lo, emin);
      hi = std::max(hi, emax);
    }
  return {lo, hi};
}

ManufacturedProblem problem_by_name(const std::string& name, double beta) {
  if (name == "identity-sin") return make_problem(name, identity_A(), sin_sin_field(), kInf);
  if (name == "smooth-sin") return make_problem(name, smooth_A(), sin_sin_field(), kInf);
  if (name == "hoelder-sin") return make_problem(name, hoelder_A(0.5), sin_sin_field(), kInf);
  if (name == "identity-poly") return make_problem(name, identity_A(), bubble_field(), kInf);
  if (name == "smooth-poly") return make_problem(name, smooth_A(), bubble_field(), kInf);
  if (name == "hoelder-poly") return make_problem(name, hoelder_A(0.5), bubble_field(), kInf);
  if (name == "constant-poly")
    return make_problem(name, constant_A(Mat2{2.0, 1.0, 1.0, 2.0}), bubble_field(), kInf);
  if (name == "identity-reduced") {
    if (!(beta > 0.5 && beta <= 2.0))
      throw std::invalid_argument("identity-reduced: beta must lie in (0.5, 2]");
    // u ~ dist^(1+beta) near the boundary, so u is in H^s for s < beta + 3/2
    return make_problem(name, identity_A(), reduced_field(beta), beta + 1.5);
  }
  throw std::invalid_argument("unknown problem name: " + name);
}

std::vector<std::string> problem_names() {
  return {"identity-sin", "smooth-sin",  "hoelder-sin",   "identity-poly",
          "smooth-poly",  "hoelder-poly", "constant-poly", "identity-reduced"};
}

}  // namespace ndfem
