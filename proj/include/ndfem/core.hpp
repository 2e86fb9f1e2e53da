// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ndfem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// 2x2 matrix, row-major fields.
struct Mat2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Vec2 apply(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
  Mat2 transpose() const { return {a00, a10, a01, a11}; }
  double det() const { return a00 * a11 - a01 * a10; }
  Mat2 inverse() const {
    const double d = det();
    return {a11 / d, -a01 / d, -a10 / d, a00 / d};
  }
  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Mat2 operator+(const Mat2& o) const { return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11}; }
  Mat2 operator-(const Mat2& o) const { return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11}; }
  Mat2 scaled(double s) const { return {a00 * s, a01 * s, a10 * s, a11 * s}; }

  /// Frobenius inner product A:B.
  double contract(const Mat2& o) const { return a00 * o.a00 + a01 * o.a01 + a10 * o.a10 + a11 * o.a11; }
  double frobenius_norm() const { return std::sqrt(contract(*this)); }

  /// Eigenvalues of the symmetric part, ascending.
  std::pair<double, double> sym_eigenvalues() const {
    const double m = 0.5 * (a00 + a11);
    const double off = 0.5 * (a01 + a10);
    const double r = std::hypot(0.5 * (a00 - a11), off);
    return {m - r, m + r};
  }
};

struct TopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EllipticityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FactorizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ndfem
