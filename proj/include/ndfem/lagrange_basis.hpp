// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <span>
#include <vector>

#include "ndfem/core.hpp"

namespace ndfem {

/// Lagrange shape functions of degree r in {1,2,3} on the reference
/// triangle with vertices (0,0), (1,0), (0,1). Local node ordering:
/// the 3 vertices, then r-1 nodes per edge in edge order (0,1), (1,2),
/// (2,0), each traversed from the first vertex, then interior nodes.
namespace lagrange {

constexpr int max_degree = 3;

constexpr int dofs_per_cell(int r) { return (r + 1) * (r + 2) / 2; }

std::vector<Vec2> reference_nodes(int r);

/// Shape values at a reference point; out has dofs_per_cell(r) entries.
void shape_values(int r, Vec2 p, std::span<double> out);

/// Reference-coordinate gradients dN/d(xi,eta).
void shape_gradients(int r, Vec2 p, std::span<Vec2> out);

/// Reference-coordinate Hessians d2N/d(xi,eta)^2.
void shape_hessians(int r, Vec2 p, std::span<Mat2> out);

}  // namespace lagrange
}  // namespace ndfem
