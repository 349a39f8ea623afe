#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "ndform/common.hpp"

namespace ndform {

/// Oriented edge of a triangulation.
///
/// `v` holds the endpoint vertex ids with v[0] < v[1]. For interior edges
/// `plus_triangle` is the smaller of the two adjacent triangle ids and
/// `minus_triangle` the larger; for boundary edges minus_triangle is -1.
/// `normal` is the unit normal pointing out of the plus triangle.
struct EdgeRecord {
  std::array<int, 2> v{-1, -1};
  int plus_triangle = -1;
  int minus_triangle = -1;
  Vec2 normal = Vec2::Zero();
  double length = 0.0;

  bool is_boundary() const { return minus_triangle < 0; }
};

/// Conforming triangle mesh of a rectangle.
struct Mesh {
  struct Tri {
    std::array<int, 3> v{-1, -1, -1};      // vertex ids, counter-clockwise
    std::array<int, 3> edge{-1, -1, -1};   // edge ids opposite to local edges (01),(12),(20)
  };

  Rect domain;
  std::vector<Vec2> vertices;
  std::vector<Tri> triangles;
  std::vector<EdgeRecord> edges;
  int n_interior_edges = 0;
  double h_max = 0.0;
  double h_min = 0.0;

  double triangle_area(int t) const;
  /// Affine-map corners of triangle t as (v0, v1, v2).
  std::array<Vec2, 3> triangle_vertices(int t) const;
};

/// Summary counts and mesh sizes, as printed by the CLI.
struct MeshStats {
  int n = 0;
  int vertices = 0;
  int triangles = 0;
  int interior_edges = 0;
  int boundary_edges = 0;
  double h_max = 0.0;
  double h_min = 0.0;
};

/// Builds a mesh from explicit vertices and triangles (counter-clockwise).
/// Edge topology, normals and mesh sizes are derived here. Rejects degenerate
/// (non-positive-area) triangles and edges shared by more than two triangles.
Mesh build_mesh(Rect domain, std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> triangles);

/// Structured n x n mesh of the rectangle, each cell split along its SW-NE
/// diagonal into a lower triangle (SW,SE,NE) and an upper triangle (SW,NE,NW).
/// Vertices are numbered row-major from the SW corner. Rejects n < 1 and
/// degenerate rectangles.
Mesh build_rect_mesh(Rect domain, int n);

MeshStats mesh_stats(const Mesh& mesh, int n = 0);

/// Plain-text export: header "vertices N triangles M", then one "x y" line per
/// vertex and one "i j k" line per triangle.
void export_text(const Mesh& mesh, std::ostream& out);

} // namespace ndform
