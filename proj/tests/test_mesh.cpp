// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include <doctest.h>

#include <random>
#include <sstream>

#include "ndfem/mesh.hpp"

using namespace ndfem;

TEST_CASE("unit square n=1: single split square") {
  const Mesh m = Mesh::unit_square(1);
  CHECK(m.n_cells() == 2);
  CHECK(m.interior_edges().size() == 1);
  CHECK(m.boundary_edges().size() == 4);
  // the diagonal, with T+/T- fixed by the lower-cell-index rule
  const InteriorEdge& e = m.interior_edges()[0];
  CHECK(e.t_plus == 0);
  CHECK(e.t_minus == 1);
  CHECK(e.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("unit square n=2: Euler count") {
  const Mesh m = Mesh::unit_square(2);
  CHECK(m.n_vertices() == 9);
  CHECK(m.n_cells() == 8);
  CHECK(m.interior_edges().size() == 8);
  CHECK(m.boundary_edges().size() == 8);
  const int E = static_cast<int>(m.interior_edges().size() + m.boundary_edges().size());
  CHECK(m.n_vertices() - E + m.n_cells() == 1);
}

TEST_CASE("unit square h_max") {
  CHECK(Mesh::unit_square(4).h_max() == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-15));
}

TEST_CASE("unit square n=0 rejected") {
  CHECK_THROWS_AS(Mesh::unit_square(0), std::invalid_argument);
}

TEST_CASE("refinement quadrisects and halves h") {
  const Mesh m1 = Mesh::unit_square(1);
  const Mesh m2 = m1.refined();
  CHECK(m2.n_cells() == 8);
  CHECK(m2.h_max() == doctest::Approx(m1.h_max() / 2.0).epsilon(1e-14));
  // refined unit_square(1) is unit_square(2) up to relabeling
  CHECK(m2.interior_edges().size() == Mesh::unit_square(2).interior_edges().size());
}

TEST_CASE("cell areas sum to the domain area") {
  for (const Mesh& m : {Mesh::unit_square(3), Mesh::unit_square(5).refined()}) {
    double area = 0.0;
    for (int t = 0; t < m.n_cells(); ++t) area += m.cell_area(t);
    CHECK(area == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("interior edge invariants") {
  const Mesh m = Mesh::unit_square(3);
  for (const InteriorEdge& e : m.interior_edges()) {
    CHECK(e.t_plus < e.t_minus);  // lower-cell-index rule
    CHECK(std::abs(e.normal.norm() - 1.0) <= 1e-14);
    const Vec2 a = m.vertices()[e.v[0]];
    const Vec2 b = m.vertices()[e.v[1]];
    CHECK(e.length == doctest::Approx((b - a).norm()).epsilon(1e-14));
    // normal points away from T+: positive dot with (T+ centroid -> T- centroid)
    auto centroid = [&](int t) {
      const auto v = m.cell_vertices(t);
      return (v[0] + v[1] + v[2]) * (1.0 / 3.0);
    };
    CHECK((centroid(e.t_minus) - centroid(e.t_plus)).dot(e.normal) > 0.0);
  }
}

TEST_CASE("boundary edge normals point outward") {
  const Mesh m = Mesh::unit_square(3);
  for (const BoundaryEdge& e : m.boundary_edges()) {
    const auto v = m.cell_vertices(e.cell);
    const Vec2 centroid = (v[0] + v[1] + v[2]) * (1.0 / 3.0);
    const Vec2 mid = (m.vertices()[e.v[0]] + m.vertices()[e.v[1]]) * 0.5;
    CHECK((mid - centroid).dot(e.normal) > 0.0);
  }
}

TEST_CASE("quasi-uniformity preserved under refinement") {
  const Mesh coarse = Mesh::unit_square(2);
  const Mesh fine = coarse.refined().refined();
  CHECK(fine.h_max() / fine.h_min() ==
        doctest::Approx(coarse.h_max() / coarse.h_min()).epsilon(1e-13));
  CHECK(fine.h_max() / fine.h_min() <= 2.0);
}

TEST_CASE("duplicated cell is rejected") {
  const Mesh m = Mesh::unit_square(1);
  auto cells = m.cells();
  cells.push_back(cells[0]);
  CHECK_THROWS_AS(Mesh(m.vertices(), cells), TopologyError);
}

TEST_CASE("non-manifold edge is rejected") {
  // three triangles sharing the edge (0,1)
  std::vector<Vec2> verts = {{0, 0}, {1, 0}, {0.5, 1.0}, {0.5, -1.0}, {1.5, 1.0}};
  std::vector<std::array<int, 3>> cells = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
  CHECK_THROWS_AS(Mesh(verts, cells), TopologyError);
}

TEST_CASE("inconsistent orientation is rejected") {
  std::vector<Vec2> verts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  // second cell wound clockwise -> non-positive area
  std::vector<std::array<int, 3>> cells = {{0, 1, 2}, {0, 2, 3}};
  std::vector<std::array<int, 3>> bad = {{0, 1, 2}, {0, 3, 2}};
  CHECK_NOTHROW(Mesh(verts, cells));
  CHECK_THROWS_AS(Mesh(verts, bad), std::invalid_argument);
}

TEST_CASE("build_interior_edges matches stored skeleton") {
  const Mesh m = Mesh::unit_square(4);
  const auto rebuilt = build_interior_edges(m);
  REQUIRE(rebuilt.size() == m.interior_edges().size());
  for (size_t k = 0; k < rebuilt.size(); ++k) {
    CHECK(rebuilt[k].t_plus == m.interior_edges()[k].t_plus);
    CHECK(rebuilt[k].t_minus == m.interior_edges()[k].t_minus);
  }
}

TEST_CASE("convex polygon fan") {
  std::vector<Vec2> hex;
  for (int k = 0; k < 6; ++k) {
    const double a = 2.0 * M_PI * k / 6.0;
    hex.push_back({std::cos(a), std::sin(a)});
  }
  const Mesh m = Mesh::convex_polygon(hex);
  CHECK(m.n_cells() == 6);
  const int E = static_cast<int>(m.interior_edges().size() + m.boundary_edges().size());
  CHECK(m.n_vertices() - E + m.n_cells() == 1);
  // hexagon area = 3*sqrt(3)/2
  CHECK(m.total_area() == doctest::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK_NOTHROW(m.refined().refined());

  std::vector<Vec2> clockwise = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK_THROWS_AS(Mesh::convex_polygon(clockwise), std::invalid_argument);
}

TEST_CASE("Euler formula holds across random refinement sequences") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick_n(1, 5);
  for (int trial = 0; trial < 5; ++trial) {
    Mesh m = Mesh::unit_square(pick_n(rng));
    const int levels = static_cast<int>(rng() % 3);
    for (int l = 0; l < levels; ++l) m = m.refined();
    const int E = static_cast<int>(m.interior_edges().size() + m.boundary_edges().size());
    CHECK(m.n_vertices() - E + m.n_cells() == 1);
    for (int t = 0; t < m.n_cells(); ++t) CHECK(m.cell_area(t) > 0.0);
  }
}

TEST_CASE("mesh export format") {
  const Mesh m = Mesh::unit_square(1);
  std::ostringstream os;
  write_mesh(m, os);
  std::istringstream is(os.str());
  std::string word;
  int nv, nc;
  is >> word >> nv >> word >> nc;
  CHECK(nv == 4);
  CHECK(nc == 2);
  double x, y;
  for (int v = 0; v < nv; ++v) {
    is >> x >> y;
    CHECK(x == m.vertices()[v].x);
    CHECK(y == m.vertices()[v].y);
  }
  int i, j, k;
  is >> i >> j >> k;
  CHECK(i == m.cells()[0][0]);
}
