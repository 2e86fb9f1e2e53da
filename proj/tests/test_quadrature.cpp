// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include <doctest.h>

#include <random>

#include "ndfem/quadrature.hpp"
#include "oracles.hpp"

using namespace ndfem;

TEST_CASE("triangle rules integrate monomials exactly") {
  for (int degree = 1; degree <= 10; ++degree) {
    const QuadratureRule rule = quad_triangle(degree);
    for (int a = 0; a + 0 <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        double acc = 0.0;
        for (int q = 0; q < rule.size(); ++q)
          acc += rule.weights[q] * std::pow(rule.points[q].x, a) * std::pow(rule.points[q].y, b);
        CHECK(acc == doctest::Approx(oracles::monomial_integral_triangle(a, b)).epsilon(1e-13));
      }
  }
}

TEST_CASE("triangle weights are positive and sum to the reference area") {
  const QuadratureRule rule = quad_triangle(8);
  double sum = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("edge rule integrates x^3") {
  const QuadratureRule rule = quad_edge(3);
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    acc += rule.weights[q] * std::pow(rule.points[q].x, 3);
  CHECK(acc == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("edge rules integrate monomials exactly") {
  for (int degree = 1; degree <= 9; ++degree) {
    const QuadratureRule rule = quad_edge(degree);
    for (int a = 0; a <= degree; ++a) {
      double acc = 0.0;
      for (int q = 0; q < rule.size(); ++q) acc += rule.weights[q] * std::pow(rule.points[q].x, a);
      CHECK(acc == doctest::Approx(1.0 / (a + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("random polynomial vs exact integral") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int r = 1; r <= 3; ++r) {
    const int d = 2 * r;
    const QuadratureRule rule = quad_triangle(d);
    // random polynomial of total degree 2r
    std::vector<std::array<double, 3>> terms;  // coeff, a, b
    double exact = 0.0;
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        const double c = unif(rng);
        terms.push_back({c, static_cast<double>(a), static_cast<double>(b)});
        exact += c * oracles::monomial_integral_triangle(a, b);
      }
    double acc = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      double p = 0.0;
      for (const auto& t : terms)
        p += t[0] * std::pow(rule.points[q].x, t[1]) * std::pow(rule.points[q].y, t[2]);
      acc += rule.weights[q] * p;
    }
    CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("unsupported orders rejected") {
  CHECK_THROWS_AS(quad_triangle(-1), std::invalid_argument);
  CHECK_THROWS_AS(quad_triangle(99), std::invalid_argument);
  CHECK_THROWS_AS(quad_edge(99), std::invalid_argument);
}
