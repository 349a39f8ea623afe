#pragma once

#include <vector>

#include "ndform/common.hpp"

namespace ndform {

/// Quadrature on the reference interval [0,1].
struct EdgeQuadRule {
  std::vector<double> points;
  std::vector<double> weights;
  int exactness = 0;
};

/// Quadrature on the reference triangle conv{(0,0),(1,0),(0,1)}.
struct TriangleQuadRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;
};

/// Gauss-Legendre rule with n points mapped to [0,1] (exact to degree 2n-1).
/// Nodes ascending, weights positive, computed to machine precision.
void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights);

/// Rule exact for polynomials of total degree <= degree. Positive weights,
/// symmetric under the triangle symmetries, all points strictly interior.
/// Supported degrees 0..12.
TriangleQuadRule triangle_quadrature(int degree);

/// Rule exact for 1D polynomials of degree <= degree; supported degrees 0..15.
EdgeQuadRule edge_quadrature(int degree);

/// Values and reference-space derivatives of all basis functions at one point.
struct BasisEval {
  std::vector<double> values;
  std::vector<Vec2> grads;
  std::vector<Mat2> hess;

  void resize(int n) {
    values.assign(n, 0.0);
    grads.assign(n, Vec2::Zero());
    hess.assign(n, Mat2::Zero());
  }
};

/// Lagrange element of degree k (1..4) on the reference triangle, with nodes on
/// the principal lattice (i/k, j/k), i+j <= k, enumerated j-outer. Each basis
/// function is expanded into monomial coefficients at construction, so eval is
/// plain polynomial evaluation with no runtime Vandermonde solve.
class ReferenceElement {
public:
  explicit ReferenceElement(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  /// Lattice coordinates (i,j) of local node l.
  std::array<int, 2> lattice(int l) const { return lattice_[l]; }

  void eval(const Vec2& p, BasisEval& out) const;
  BasisEval eval(const Vec2& p) const;

  /// Tabulation at many points; tab[q] holds the BasisEval at points[q].
  std::vector<BasisEval> tabulate(const std::vector<Vec2>& points) const;

  /// Local node ids on local edge le ((01),(12),(20)), ordered from the first
  /// to the second local vertex of that edge; k+1 entries, endpoints included.
  std::vector<int> edge_nodes(int le) const;

private:
  int degree_;
  std::vector<Vec2> nodes_;
  std::vector<std::array<int, 2>> lattice_;
  // Monomial coefficients, row-major (k+1)x(k+1), for each basis function and
  // each of the six tabulated polynomials: value, dx, dy, dxx, dxy, dyy.
  std::vector<std::array<std::vector<double>, 6>> coeffs_;
};

/// Affine map F(x) = origin + J x from the reference triangle onto a physical
/// triangle (v0,v1,v2).
struct AffineMap {
  Vec2 origin = Vec2::Zero();
  Mat2 J = Mat2::Identity();
  Mat2 Jinv = Mat2::Identity();
  Mat2 JinvT = Mat2::Identity();
  double det_abs = 1.0;

  static AffineMap from_triangle(const Vec2& v0, const Vec2& v1, const Vec2& v2);

  Vec2 to_physical(const Vec2& ref) const { return origin + J * ref; }
  Vec2 to_reference(const Vec2& phys) const { return Jinv * (phys - origin); }
};

/// Converts reference-space gradients and Hessians to physical space in place:
/// grad -> J^{-T} grad, hess -> J^{-T} hess J^{-1}. Values are unchanged.
void physical_derivatives(const AffineMap& map, BasisEval& io);

} // namespace ndform
