#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "ndform/mesh.hpp"

using namespace ndform;

namespace {
const Rect kUnit{0.0, 1.0, 0.0, 1.0};
}

TEST_CASE("structured mesh counts follow the closed-form formulas") {
  for (int n : {1, 2, 3, 4, 8, 16, 64}) {
    const Mesh mesh = build_rect_mesh(kUnit, n);
    CHECK(static_cast<int>(mesh.vertices.size()) == (n + 1) * (n + 1));
    CHECK(static_cast<int>(mesh.triangles.size()) == 2 * n * n);
    CHECK(mesh.n_interior_edges == 3 * n * n - 2 * n);
    CHECK(static_cast<int>(mesh.edges.size()) - mesh.n_interior_edges == 4 * n);
  }
}

TEST_CASE("n=1 splits the square into two triangles sharing the diagonal") {
  const Mesh mesh = build_rect_mesh(kUnit, 1);
  REQUIRE(mesh.triangles.size() == 2);
  CHECK(mesh.n_interior_edges == 1);
  CHECK(mesh.edges.size() == 5);

  // SW-NE diagonal: the shared edge connects vertex 0 (0,0) and vertex 3 (1,1).
  int shared = -1;
  for (size_t e = 0; e < mesh.edges.size(); ++e)
    if (!mesh.edges[e].is_boundary()) shared = static_cast<int>(e);
  REQUIRE(shared >= 0);
  CHECK(mesh.edges[shared].v[0] == 0);
  CHECK(mesh.edges[shared].v[1] == 3);
  CHECK(mesh.edges[shared].plus_triangle == 0);
  CHECK(mesh.edges[shared].minus_triangle == 1);
  CHECK(mesh.h_max == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(mesh.h_min == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("n=2 unit square: hand-enumerated sizes and orientation") {
  const Mesh mesh = build_rect_mesh(kUnit, 2);
  CHECK(mesh.vertices.size() == 9);
  CHECK(mesh.triangles.size() == 8);
  CHECK(mesh.n_interior_edges == 8);
  CHECK(mesh.edges.size() - mesh.n_interior_edges == 8);
  CHECK(mesh.h_min == doctest::Approx(0.5).epsilon(1e-15));

  // Row-major vertices: vertex 4 is the center.
  CHECK(mesh.vertices[4].x() == doctest::Approx(0.5));
  CHECK(mesh.vertices[4].y() == doctest::Approx(0.5));

  double total = 0.0;
  for (int t = 0; t < 8; ++t) {
    CHECK(mesh.triangle_area(t) > 0.0);
    total += mesh.triangle_area(t);
  }
  CHECK(total == doctest::Approx(kUnit.area()).epsilon(1e-12));
}

TEST_CASE("triangle areas tile the domain for a non-square rectangle") {
  const Rect rect{-0.5, 0.5, -0.5, 0.5};
  const Mesh mesh = build_rect_mesh(rect, 7);
  double total = 0.0;
  for (size_t t = 0; t < mesh.triangles.size(); ++t)
    total += mesh.triangle_area(static_cast<int>(t));
  CHECK(total == doctest::Approx(rect.area()).epsilon(1e-12));
}

TEST_CASE("refinement halves h_max and h_min bitwise") {
  const Rect rect{0.0, 0.5, 0.0, 0.5};
  for (int n : {1, 2, 3, 5, 8, 16, 32}) {
    const Mesh coarse = build_rect_mesh(rect, n);
    const Mesh fine = build_rect_mesh(rect, 2 * n);
    CHECK(fine.h_max == coarse.h_max / 2.0);
    CHECK(fine.h_min == coarse.h_min / 2.0);
  }
  const Mesh m8 = build_rect_mesh(rect, 8);
  CHECK(m8.h_max == doctest::Approx(std::sqrt(2.0) / 16.0).epsilon(1e-16));
}

TEST_CASE("edge normals are unit and point out of the plus triangle") {
  const Mesh mesh = build_rect_mesh(kUnit, 3);
  for (const EdgeRecord& rec : mesh.edges) {
    CHECK(rec.normal.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const Vec2 a = mesh.vertices[rec.v[0]];
    const Vec2 b = mesh.vertices[rec.v[1]];
    const auto& tri = mesh.triangles[rec.plus_triangle];
    const Vec2 centroid =
        (mesh.vertices[tri.v[0]] + mesh.vertices[tri.v[1]] + mesh.vertices[tri.v[2]]) / 3.0;
    CHECK(rec.normal.dot(centroid - 0.5 * (a + b)) < 0.0);
    if (!rec.is_boundary()) CHECK(rec.plus_triangle < rec.minus_triangle);
    CHECK(rec.v[0] < rec.v[1]);
  }
}

TEST_CASE("every triangle references its three edges consistently") {
  const Mesh mesh = build_rect_mesh(kUnit, 4);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int le = 0; le < 3; ++le) {
      const EdgeRecord& rec = mesh.edges[tri.edge[le]];
      const std::set<int> want{tri.v[le], tri.v[(le + 1) % 3]};
      CHECK(want == std::set<int>{rec.v[0], rec.v[1]});
      const bool adjacent = rec.plus_triangle == static_cast<int>(t) ||
                            rec.minus_triangle == static_cast<int>(t);
      CHECK(adjacent);
    }
  }
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(build_rect_mesh(kUnit, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_rect_mesh(Rect{1.0, 0.0, 0.0, 1.0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_rect_mesh(Rect{0.0, 1.0, 2.0, 2.0}, 2), std::invalid_argument);

  // Clockwise triangle.
  CHECK_THROWS_AS(build_mesh(kUnit, {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 2, 1}}),
                  std::invalid_argument);
  // Zero-area triangle.
  CHECK_THROWS_AS(build_mesh(kUnit, {Vec2(0, 0), Vec2(1, 1), Vec2(2, 2)}, {{0, 1, 2}}),
                  std::invalid_argument);
}

TEST_CASE("text export round-trips the counts") {
  const Mesh mesh = build_rect_mesh(kUnit, 2);
  std::ostringstream out;
  export_text(mesh, out);
  std::istringstream in(out.str());
  std::string word;
  int nv = 0, nt = 0;
  in >> word >> nv >> word >> nt;
  CHECK(nv == 9);
  CHECK(nt == 8);
  double x, y;
  for (int i = 0; i < nv; ++i) {
    in >> x >> y;
    CHECK(x == mesh.vertices[i].x());
    CHECK(y == mesh.vertices[i].y());
  }
  int a, b, c;
  in >> a >> b >> c;
  CHECK(a == mesh.triangles[0].v[0]);
  CHECK(c == mesh.triangles[0].v[2]);
}

TEST_CASE("mesh_stats mirrors the mesh fields") {
  const Mesh mesh = build_rect_mesh(Rect{-0.5, 0.5, -0.5, 0.5}, 64);
  const MeshStats s = mesh_stats(mesh, 64);
  CHECK(s.triangles == 8192);
  CHECK(s.interior_edges == 3 * 64 * 64 - 2 * 64);
  CHECK(s.boundary_edges == 256);
  CHECK(s.h_max == doctest::Approx(0.022097086912079608).epsilon(1e-15));
}
