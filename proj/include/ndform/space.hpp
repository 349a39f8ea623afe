#pragma once

#include <functional>
#include <memory>

#include "ndform/element.hpp"
#include "ndform/mesh.hpp"

namespace ndform {

using ScalarField = std::function<double(const Vec2&)>;

/// Value and physical-space derivatives of an FE function at one point.
struct PointEval {
  double value = 0.0;
  Vec2 grad = Vec2::Zero();
  Mat2 hess = Mat2::Zero();
};

/// Continuous Lagrange space of degree k on a triangle mesh.
///
/// Global DOF order: vertex DOFs (= vertex ids), then k-1 DOFs per edge in edge
/// order (oriented from the lower to the higher endpoint id), then interior
/// DOFs per triangle in lattice order. Boundary DOFs are detected geometrically
/// against the rectangle.
struct Space {
  std::shared_ptr<const Mesh> mesh;
  int degree = 1;
  ReferenceElement ref;
  int dim = 0;

  std::vector<std::vector<int>> cell_dofs;
  std::vector<Vec2> dof_coords;
  std::vector<char> on_boundary;
  std::vector<int> boundary_dofs;
  std::vector<int> free_dofs;

  /// Evaluates the FE function with the given coefficients on triangle t at a
  /// reference point. Intended for point queries; bulk loops should tabulate.
  PointEval eval(const Vector& coef, int t, const Vec2& ref) const;

  AffineMap cell_map(int t) const;
};

Space build_space(std::shared_ptr<const Mesh> mesh, int degree);

/// Nodal interpolant: coefficient i = g(dof coordinate i).
Vector interpolate(const Space& space, const ScalarField& g);

/// L2 projection onto the space; the mass system is solved directly and the
/// relative residual is required to be <= 1e-12.
Vector l2_project(const Space& space, const ScalarField& g, int quad_degree = -1);

} // namespace ndform
