// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "ndfem/core.hpp"

namespace ndfem {

/// Edge shared by two cells. The unit normal points from t_plus into
/// t_minus, i.e. normal = nu_{T+} = -nu_{T-}; jumps across the edge are
/// taken as (trace from t_plus) - (trace from t_minus).
struct InteriorEdge {
  std::array<int, 2> v;  // endpoint vertex indices
  int t_plus = -1;
  int t_minus = -1;
  Vec2 normal;
  double length = 0.0;
};

struct BoundaryEdge {
  std::array<int, 2> v;
  int cell = -1;
  Vec2 normal;  // outward unit normal
  double length = 0.0;
};

struct EdgeTopology {
  std::vector<InteriorEdge> interior;
  std::vector<BoundaryEdge> boundary;
};

/// Conforming triangulation of a polygonal domain. Immutable after
/// construction; cells are counterclockwise vertex triples.
class Mesh {
 public:
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells);

  /// Structured mesh of (0,1)^2 with 2*n^2 right triangles; each grid
  /// square is split along its lower-left-to-upper-right diagonal.
  static Mesh unit_square(int n);

  /// Fan triangulation of a convex polygon (counterclockwise corners)
  /// about its centroid.
  static Mesh convex_polygon(const std::vector<Vec2>& corners);

  /// Uniform refinement: each triangle split into 4 congruent children
  /// via edge midpoints.
  Mesh refined() const;

  /// Copy with the stored orientation of the given interior edges
  /// reversed (t_plus/t_minus swapped, normal negated). Assembled
  /// operators must be invariant under this.
  Mesh with_flipped_edges(std::span<const int> interior_edge_ids) const;

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  const std::vector<InteriorEdge>& interior_edges() const { return edges_.interior; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return edges_.boundary; }

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_cells() const { return static_cast<int>(cells_.size()); }

  double h_max() const { return h_max_; }
  double h_min() const { return h_min_; }
  double total_area() const { return total_area_; }

  std::array<Vec2, 3> cell_vertices(int t) const;
  double cell_area(int t) const;
  double cell_diameter(int t) const;

  /// Affine reference map x = v0 + J * (xi, eta) with J = [v1-v0 | v2-v0].
  Mat2 jacobian(int t) const;
  Vec2 to_physical(int t, Vec2 ref) const;
  Vec2 to_reference(int t, Vec2 x) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  EdgeTopology edges_;
  double h_max_ = 0.0;
  double h_min_ = 0.0;
  double total_area_ = 0.0;
};

/// Build the oriented interior-edge skeleton from raw connectivity.
/// T+ is the incident cell with the smaller index and the normal points
/// away from it. Throws TopologyError on non-manifold or inconsistently
/// oriented input.
EdgeTopology build_edge_topology(const std::vector<Vec2>& vertices,
                                 const std::vector<std::array<int, 3>>& cells);

/// Recompute the interior skeleton of an existing mesh.
std::vector<InteriorEdge> build_interior_edges(const Mesh& mesh);

/// Plain-text export: "vertices N cells M", N lines "x y", M lines "i j k".
void write_mesh(const Mesh& mesh, std::ostream& os);

}  // namespace ndfem
