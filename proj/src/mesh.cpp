#include "ndform/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace ndform {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

// sqrt(dx^2 + dy^2) instead of hypot: halving both components then halves the
// result bitwise, which the structured refinement relies on.
double edge_length(const Vec2& a, const Vec2& b) {
  const double dx = b.x() - a.x();
  const double dy = b.y() - a.y();
  return std::sqrt(dx * dx + dy * dy);
}

} // namespace

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles.at(t);
  return signed_area(vertices[tri.v[0]], vertices[tri.v[1]], vertices[tri.v[2]]);
}

std::array<Vec2, 3> Mesh::triangle_vertices(int t) const {
  const auto& tri = triangles.at(t);
  return {vertices[tri.v[0]], vertices[tri.v[1]], vertices[tri.v[2]]};
}

Mesh build_mesh(Rect domain, std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> triangles) {
  Mesh mesh;
  mesh.domain = domain;
  mesh.vertices = std::move(vertices);
  mesh.triangles.reserve(triangles.size());

  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& t : triangles) {
    for (int vid : t)
      if (vid < 0 || vid >= nv)
        throw std::invalid_argument("build_mesh: triangle references vertex " +
                                    std::to_string(vid) + " out of range");
    if (signed_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) <= 0.0)
      throw std::invalid_argument("build_mesh: degenerate or clockwise triangle");
    Mesh::Tri tri;
    tri.v = t;
    mesh.triangles.push_back(tri);
  }

  // Discover edges in deterministic triangle order; local edges are (01),(12),(20).
  std::map<std::array<int, 2>, int> edge_of;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    auto& tri = mesh.triangles[t];
    for (int le = 0; le < 3; ++le) {
      const int a = tri.v[le];
      const int b = tri.v[(le + 1) % 3];
      const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        EdgeRecord rec;
        rec.v = key;
        rec.plus_triangle = t;
        rec.length = edge_length(mesh.vertices[key[0]], mesh.vertices[key[1]]);
        const int id = static_cast<int>(mesh.edges.size());
        mesh.edges.push_back(rec);
        edge_of.emplace(key, id);
        tri.edge[le] = id;
      } else {
        EdgeRecord& rec = mesh.edges[it->second];
        if (rec.minus_triangle >= 0)
          throw std::invalid_argument("build_mesh: edge shared by more than two triangles");
        rec.minus_triangle = t;
        if (rec.minus_triangle < rec.plus_triangle)
          std::swap(rec.plus_triangle, rec.minus_triangle);
        tri.edge[le] = it->second;
      }
    }
  }

  mesh.h_max = 0.0;
  mesh.h_min = std::numeric_limits<double>::infinity();
  mesh.n_interior_edges = 0;
  for (auto& rec : mesh.edges) {
    if (!rec.is_boundary()) ++mesh.n_interior_edges;
    mesh.h_max = std::max(mesh.h_max, rec.length);
    mesh.h_min = std::min(mesh.h_min, rec.length);

    // Unit normal out of the plus triangle.
    const Vec2 a = mesh.vertices[rec.v[0]];
    const Vec2 b = mesh.vertices[rec.v[1]];
    Vec2 n((b - a).y(), -(b - a).x());
    n /= n.norm();
    const auto& pt = mesh.triangles[rec.plus_triangle];
    const Vec2 centroid =
        (mesh.vertices[pt.v[0]] + mesh.vertices[pt.v[1]] + mesh.vertices[pt.v[2]]) / 3.0;
    if (n.dot(centroid - 0.5 * (a + b)) > 0.0) n = -n;
    rec.normal = n;
  }

  return mesh;
}

Mesh build_rect_mesh(Rect domain, int n) {
  if (n < 1) throw std::invalid_argument("build_rect_mesh: n must be >= 1");
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
    throw std::invalid_argument("build_rect_mesh: degenerate domain");

  const double dx = domain.width() / n;
  const double dy = domain.height() / n;

  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.emplace_back(i == n ? domain.x1 : domain.x0 + i * dx,
                            j == n ? domain.y1 : domain.y0 + j * dy);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int sw = vid(i, j), se = vid(i + 1, j);
      const int ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
      tris.push_back({sw, se, ne});  // lower
      tris.push_back({sw, ne, nw});  // upper
    }
  }

  Mesh mesh = build_mesh(domain, std::move(vertices), std::move(tris));
  // Mesh sizes from the cell dimensions directly: rounding commutes with the
  // halving of dx and dy, so refining n -> 2n halves these bitwise, which the
  // per-edge lengths cannot guarantee (vertex coordinates round independently).
  mesh.h_max = std::sqrt(dx * dx + dy * dy);
  mesh.h_min = std::min(dx, dy);
  return mesh;
}

MeshStats mesh_stats(const Mesh& mesh, int n) {
  MeshStats s;
  s.n = n;
  s.vertices = static_cast<int>(mesh.vertices.size());
  s.triangles = static_cast<int>(mesh.triangles.size());
  s.interior_edges = mesh.n_interior_edges;
  s.boundary_edges = static_cast<int>(mesh.edges.size()) - mesh.n_interior_edges;
  s.h_max = mesh.h_max;
  s.h_min = mesh.h_min;
  return s;
}

void export_text(const Mesh& mesh, std::ostream& out) {
  out.precision(17);
  out << "vertices " << mesh.vertices.size() << " triangles " << mesh.triangles.size()
      << "\n";
  for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << "\n";
  for (const auto& t : mesh.triangles)
    out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
}

} // namespace ndform
