// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <utility>

namespace ndfem {

namespace {

double signed_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  if (vertices_.empty() || cells_.empty())
    throw std::invalid_argument("mesh: empty vertex or cell list");
  const int nv = n_vertices();
  for (const auto& c : cells_) {
    for (int k = 0; k < 3; ++k)
      if (c[k] < 0 || c[k] >= nv) throw std::invalid_argument("mesh: vertex index out of range");
    if (signed_area(vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]) <= 0.0)
      throw std::invalid_argument("mesh: cell with non-positive signed area");
  }
  edges_ = build_edge_topology(vertices_, cells_);

  h_max_ = 0.0;
  h_min_ = std::numeric_limits<double>::max();
  total_area_ = 0.0;
  for (int t = 0; t < n_cells(); ++t) {
    const double d = cell_diameter(t);
    h_max_ = std::max(h_max_, d);
    h_min_ = std::min(h_min_, d);
    total_area_ += cell_area(t);
  }
}

Mesh Mesh::unit_square(int n) {
  if (n < 1) throw std::invalid_argument("unit_square: n must be >= 1");
  std::vector<Vec2> verts;
  verts.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // split along the lower-left-to-upper-right diagonal
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  return Mesh(std::move(verts), std::move(cells));
}

Mesh Mesh::convex_polygon(const std::vector<Vec2>& corners) {
  const int m = static_cast<int>(corners.size());
  if (m < 3) throw std::invalid_argument("convex_polygon: need at least 3 corners");
  Vec2 centroid{0.0, 0.0};
  for (const auto& p : corners) centroid = centroid + p;
  centroid = centroid * (1.0 / m);
  for (int k = 0; k < m; ++k) {
    const Vec2 a = corners[k];
    const Vec2 b = corners[(k + 1) % m];
    const Vec2 c = corners[(k + 2) % m];
    if (signed_area(a, b, c) <= 0.0)
      throw std::invalid_argument("convex_polygon: corners must be strictly convex, counterclockwise");
  }
  std::vector<Vec2> verts = corners;
  verts.push_back(centroid);
  std::vector<std::array<int, 3>> cells;
  for (int k = 0; k < m; ++k) cells.push_back({k, (k + 1) % m, m});
  return Mesh(std::move(verts), std::move(cells));
}

Mesh Mesh::refined() const {
  std::vector<Vec2> verts = vertices_;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(verts.size());
    verts.push_back((vertices_[a] + vertices_[b]) * 0.5);
    midpoint.emplace(key, id);
    return id;
  };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(cells_.size() * 4);
  for (const auto& c : cells_) {
    const int m01 = mid(c[0], c[1]);
    const int m12 = mid(c[1], c[2]);
    const int m20 = mid(c[2], c[0]);
    cells.push_back({c[0], m01, m20});
    cells.push_back({m01, c[1], m12});
    cells.push_back({m20, m12, c[2]});
    cells.push_back({m01, m12, m20});
  }
  return Mesh(std::move(verts), std::move(cells));
}

Mesh Mesh::with_flipped_edges(std::span<const int> interior_edge_ids) const {
  Mesh copy = *this;
  for (int id : interior_edge_ids) {
    if (id < 0 || id >= static_cast<int>(copy.edges_.interior.size()))
      throw std::invalid_argument("with_flipped_edges: edge index out of range");
    InteriorEdge& e = copy.edges_.interior[id];
    std::swap(e.t_plus, e.t_minus);
    e.normal = e.normal * -1.0;
  }
  return copy;
}

std::array<Vec2, 3> Mesh::cell_vertices(int t) const {
  const auto& c = cells_[t];
  return {vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]};
}

double Mesh::cell_area(int t) const {
  const auto v = cell_vertices(t);
  return signed_area(v[0], v[1], v[2]);
}

double Mesh::cell_diameter(int t) const {
  const auto v = cell_vertices(t);
  return std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(), (v[0] - v[2]).norm()});
}

Mat2 Mesh::jacobian(int t) const {
  const auto v = cell_vertices(t);
  const Vec2 e1 = v[1] - v[0];
  const Vec2 e2 = v[2] - v[0];
  return {e1.x, e2.x, e1.y, e2.y};
}

Vec2 Mesh::to_physical(int t, Vec2 ref) const {
  const auto v = cell_vertices(t);
  return v[0] + jacobian(t).apply(ref);
}

Vec2 Mesh::to_reference(int t, Vec2 x) const {
  const auto v = cell_vertices(t);
  return jacobian(t).inverse().apply(x - v[0]);
}

EdgeTopology build_edge_topology(const std::vector<Vec2>& vertices,
                                 const std::vector<std::array<int, 3>>& cells) {
  struct Incidence {
    int cell;
    int from;  // traversal direction within the cell
    int to;
  };
  std::map<std::pair<int, int>, std::vector<Incidence>> edge_cells;
  for (int t = 0; t < static_cast<int>(cells.size()); ++t) {
    const auto& c = cells[t];
    for (int k = 0; k < 3; ++k) {
      const int a = c[k];
      const int b = c[(k + 1) % 3];
      edge_cells[{std::min(a, b), std::max(a, b)}].push_back({t, a, b});
    }
  }

  EdgeTopology topo;
  for (const auto& [key, inc] : edge_cells) {
    if (inc.size() > 2)
      throw TopologyError("non-manifold mesh: edge shared by more than two cells");
    if (inc.size() == 1) {
      const auto& e = inc[0];
      const Vec2 a = vertices[e.from];
      const Vec2 b = vertices[e.to];
      const Vec2 d = b - a;
      const double len = d.norm();
      // outward normal of a counterclockwise cell
      const Vec2 nu{d.y / len, -d.x / len};
      topo.boundary.push_back({{e.from, e.to}, e.cell, nu, len});
    } else {
      const auto& e0 = inc[0];
      const auto& e1 = inc[1];
      if (e0.from == e1.from)
        throw TopologyError("inconsistently oriented or duplicated cells share an edge");
      // orientation tie-break: T+ is the lower cell index
      const auto& plus = (e0.cell < e1.cell) ? e0 : e1;
      const auto& minus = (e0.cell < e1.cell) ? e1 : e0;
      const Vec2 a = vertices[plus.from];
      const Vec2 b = vertices[plus.to];
      const Vec2 d = b - a;
      const double len = d.norm();
      const Vec2 nu{d.y / len, -d.x / len};
      topo.interior.push_back({{key.first, key.second}, plus.cell, minus.cell, nu, len});
    }
  }
  return topo;
}

std::vector<InteriorEdge> build_interior_edges(const Mesh& mesh) {
  return build_edge_topology(mesh.vertices(), mesh.cells()).interior;
}

void write_mesh(const Mesh& mesh, std::ostream& os) {
  os << "vertices " << mesh.n_vertices() << " cells " << mesh.n_cells() << "\n";
  os.precision(17);
  for (const auto& p : mesh.vertices()) os << p.x << " " << p.y << "\n";
  for (const auto& c : mesh.cells()) os << c[0] << " " << c[1] << " " << c[2] << "\n";
}

}  // namespace ndfem
