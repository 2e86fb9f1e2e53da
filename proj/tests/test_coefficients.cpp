// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include <doctest.h>

#include <random>

#include "ndfem/coefficients.hpp"
#include "ndfem/quadrature.hpp"
#include "oracles.hpp"

using namespace ndfem;

TEST_CASE("identity coefficient") {
  const CoefficientField A = identity_A();
  const Mat2 a = A({0.3, 0.7});
  CHECK(a.a00 == 1.0);
  CHECK(a.a01 == 0.0);
  CHECK(a.a10 == 0.0);
  CHECK(a.a11 == 1.0);
  CHECK(A.lambda_min() == 1.0);
  CHECK(A.lambda_max() == 1.0);
  const auto [lo, hi] = verify_ellipticity(A, 16);
  CHECK(lo == 1.0);
  CHECK(hi == 1.0);
}

TEST_CASE("constant coefficient validation") {
  CHECK_THROWS_AS(constant_A(Mat2{1.0, 2.0, 2.0, 1.0}), std::invalid_argument);  // eigenvalue -1
  CHECK_THROWS_AS(constant_A(Mat2{1.0, 0.5, -0.5, 1.0}), std::invalid_argument);  // not symmetric
  const CoefficientField A = constant_A(Mat2{2.0, 1.0, 1.0, 2.0});
  CHECK(A.lambda_min() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(A.lambda_max() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("smooth coefficient stays within its declared bounds") {
  const CoefficientField A = smooth_A();
  const auto [lo, hi] = verify_ellipticity(A, 64);
  CHECK(lo >= 0.4);
  CHECK(hi <= 1.6);
  CHECK(lo < 0.55);  // the bound is active near (0,1)
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Mat2 a = A({unif(rng), unif(rng)});
    CHECK(std::abs(a.a01 - a.a10) <= 1e-14);
  }
}

TEST_CASE("hoelder coefficient") {
  const CoefficientField A = hoelder_A(0.5);
  // exactly the identity at the kink
  const Mat2 c = A({0.5, 0.5});
  CHECK(c.a00 == 1.0);
  CHECK(c.a11 == 1.0);
  CHECK(c.a01 == 0.0);
  // eigenvalues at the corner: 1 +- 0.5 (sqrt(0.5))^0.5
  const auto [lo, hi] = A(Vec2{0.0, 0.0}).sym_eigenvalues();
  const double dev = 0.5 * std::pow(std::sqrt(0.5), 0.5);
  CHECK(lo == doctest::Approx(1.0 - dev).epsilon(1e-14));
  CHECK(hi == doctest::Approx(1.0 + dev).epsilon(1e-14));

  const auto [smin, smax] = verify_ellipticity(A, 64);
  CHECK(smin >= 0.5 - 1e-10);
  CHECK(smax <= 1.5 + 1e-10);

  CHECK_THROWS_AS(hoelder_A(0.0), std::invalid_argument);
  CHECK_THROWS_AS(hoelder_A(1.0), std::invalid_argument);
  CHECK_THROWS_AS(hoelder_A(-0.2), std::invalid_argument);
}

TEST_CASE("ellipticity verification flags violations with the sample point") {
  const CoefficientField bad(
      [](Vec2 p) {
        return p.x > 0.75 ? Mat2{1.0, 2.0, 2.0, 1.0} : Mat2::identity();  // indefinite patch
      },
      0.5, 3.0, Smoothness::smooth);
  CHECK_THROWS_WITH_AS(verify_ellipticity(bad, 32), doctest::Contains("at ("), EllipticityError);
  CHECK_THROWS_AS(verify_ellipticity(identity_A(), 1), std::invalid_argument);
}

TEST_CASE("manufactured forcing: Laplacian of sin sin") {
  const ManufacturedProblem p = problem_by_name("identity-sin");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Vec2 x{unif(rng), unif(rng)};
    const double expected = 2.0 * M_PI * M_PI * std::sin(M_PI * x.x) * std::sin(M_PI * x.y);
    CHECK(p.forcing(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("manufactured forcing: constant A against the symbolic oracle") {
  const ManufacturedProblem p = problem_by_name("constant-poly");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Vec2 v{unif(rng), unif(rng)};
    // -A:D^2 u for A=[[2,1],[1,2]], u = x(1-x)y(1-y)
    const double expected = 4.0 * (v.x * (1.0 - v.x) + v.y * (1.0 - v.y)) -
                            2.0 * (1.0 - 2.0 * v.x) * (1.0 - 2.0 * v.y);
    CHECK(p.forcing(v) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("solutions that do not vanish on the boundary are rejected") {
  ScalarField u;
  u.value = [](Vec2 p) { return 1.0 + p.x; };
  u.gradient = [](Vec2) { return Vec2{1.0, 0.0}; };
  u.hessian = [](Vec2) { return Mat2{}; };
  CHECK_THROWS_AS(make_problem("bad", identity_A(), u, 2.0), std::invalid_argument);
}

TEST_CASE("finite-difference Hessian matches the analytic one for every catalog problem") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  for (const std::string& name : problem_names()) {
    const ManufacturedProblem p = problem_by_name(name);
    for (int k = 0; k < 10; ++k) {
      const Vec2 x{unif(rng), unif(rng)};
      const Mat2 analytic = p.exact_u.hessian(x);
      const Mat2 fd = oracles::fd_hessian(p.exact_u.value, x);
      CHECK(std::abs(analytic.a00 - fd.a00) <= 1e-5 * (1.0 + std::abs(analytic.a00)));
      CHECK(std::abs(analytic.a01 - fd.a01) <= 1e-5 * (1.0 + std::abs(analytic.a01)));
      CHECK(std::abs(analytic.a11 - fd.a11) <= 1e-5 * (1.0 + std::abs(analytic.a11)));
      const Vec2 ga = p.exact_u.gradient(x);
      const Vec2 gf = oracles::fd_gradient(p.exact_u.value, x);
      CHECK(std::abs(ga.x - gf.x) <= 1e-6 * (1.0 + std::abs(ga.x)));
      CHECK(std::abs(ga.y - gf.y) <= 1e-6 * (1.0 + std::abs(ga.y)));
    }
  }
}

TEST_CASE("forcing is finite at quadrature points, including near the kink") {
  const QuadratureRule rule = quad_triangle(8);
  for (const std::string& name : problem_names()) {
    const ManufacturedProblem p = problem_by_name(name);
    // quarter-cells anchored at the kink (0.5, 0.5) and at the boundary
    for (const Vec2 corner :
         {Vec2{0.5, 0.5}, Vec2{0.0, 0.0}, Vec2{0.75, 0.5}, Vec2{0.0, 0.75}}) {
      for (int q = 0; q < rule.size(); ++q) {
        const Vec2 x{corner.x + 0.25 * (rule.points[q].x), corner.y + 0.25 * (rule.points[q].y)};
        CHECK(std::isfinite(p.forcing(x)));
      }
    }
  }
}

TEST_CASE("unknown problem names are rejected") {
  CHECK_THROWS_AS(problem_by_name("no-such-problem"), std::invalid_argument);
  CHECK_THROWS_AS(problem_by_name("identity-reduced", 0.25), std::invalid_argument);
  CHECK(problem_by_name("identity-reduced", 0.75).regularity_s == doctest::Approx(2.25));
}
