#include "ndform/space.hpp"

#include <algorithm>
#include <cmath>

#include "ndform/linalg.hpp"

namespace ndform {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

AffineMap Space::cell_map(int t) const {
  const auto v = mesh->triangle_vertices(t);
  return AffineMap::from_triangle(v[0], v[1], v[2]);
}

PointEval Space::eval(const Vector& coef, int t, const Vec2& ref_pt) const {
  if (coef.size() != dim)
    throw std::invalid_argument("Space::eval: coefficient vector has wrong length");
  BasisEval basis = ref.eval(ref_pt);
  physical_derivatives(cell_map(t), basis);

  PointEval out;
  const auto& dofs = cell_dofs[t];
  for (size_t l = 0; l < dofs.size(); ++l) {
    const double c = coef[dofs[l]];
    out.value += c * basis.values[l];
    out.grad += c * basis.grads[l];
    out.hess += c * basis.hess[l];
  }
  return out;
}

Space build_space(std::shared_ptr<const Mesh> mesh, int degree) {
  if (!mesh) throw std::invalid_argument("build_space: null mesh");
  if (degree < 1 || degree > 4)
    throw std::invalid_argument("build_space: degree must be in 1..4");

  Space space{std::move(mesh), degree, ReferenceElement(degree)};
  const Mesh& m = *space.mesh;
  const int k = degree;
  const int nv = static_cast<int>(m.vertices.size());
  const int ne = static_cast<int>(m.edges.size());
  const int nt = static_cast<int>(m.triangles.size());
  const int per_edge = k - 1;
  const int per_tri = (k - 1) * (k - 2) / 2;
  space.dim = nv + per_edge * ne + per_tri * nt;

  space.dof_coords.assign(space.dim, Vec2::Zero());
  for (int v = 0; v < nv; ++v) space.dof_coords[v] = m.vertices[v];
  for (int e = 0; e < ne; ++e) {
    const Vec2 a = m.vertices[m.edges[e].v[0]];
    const Vec2 b = m.vertices[m.edges[e].v[1]];
    for (int s = 0; s < per_edge; ++s)
      space.dof_coords[nv + e * per_edge + s] =
          a + (static_cast<double>(s + 1) / k) * (b - a);
  }

  space.cell_dofs.assign(nt, std::vector<int>(space.ref.size(), -1));
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.triangles[t];
    const AffineMap map = space.cell_map(t);
    int interior_slot = 0;
    for (int l = 0; l < space.ref.size(); ++l) {
      const auto [i, j] = space.ref.lattice(l);
      int dof = -1;
      if (i == 0 && j == 0) dof = tri.v[0];
      else if (i == k && j == 0) dof = tri.v[1];
      else if (i == 0 && j == k) dof = tri.v[2];
      else if (j == 0 || i + j == k || i == 0) {
        // Interior node of a local edge; r is the lattice position measured
        // from the edge's first local vertex.
        int le, r;
        if (j == 0) { le = 0; r = i; }
        else if (i + j == k) { le = 1; r = j; }
        else { le = 2; r = k - j; }
        const int ga = tri.v[le], gb = tri.v[(le + 1) % 3];
        const int slot = (ga < gb) ? r - 1 : k - r - 1;
        dof = nv + tri.edge[le] * per_edge + slot;
      } else {
        dof = nv + ne * per_edge + t * per_tri + interior_slot++;
        space.dof_coords[dof] = map.to_physical(space.ref.nodes()[l]);
      }
      space.cell_dofs[t][l] = dof;
    }
  }

  const Rect& d = m.domain;
  const double tol = 1e-12 * std::max({1.0, std::abs(d.x0), std::abs(d.x1),
                                       std::abs(d.y0), std::abs(d.y1)});
  space.on_boundary.assign(space.dim, 0);
  for (int i = 0; i < space.dim; ++i) {
    const Vec2& p = space.dof_coords[i];
    if (near(p.x(), d.x0, tol) || near(p.x(), d.x1, tol) || near(p.y(), d.y0, tol) ||
        near(p.y(), d.y1, tol))
      space.on_boundary[i] = 1;
  }
  for (int i = 0; i < space.dim; ++i)
    (space.on_boundary[i] ? space.boundary_dofs : space.free_dofs).push_back(i);

  return space;
}

Vector interpolate(const Space& space, const ScalarField& g) {
  Vector coef(space.dim);
  for (int i = 0; i < space.dim; ++i) coef[i] = g(space.dof_coords[i]);
  return coef;
}

Vector l2_project(const Space& space, const ScalarField& g, int quad_degree) {
  const int deg = quad_degree < 0 ? 2 * space.degree + 2 : quad_degree;
  const SparseMat M = mass_matrix(space, deg);

  const TriangleQuadRule rule = triangle_quadrature(deg);
  const auto tab = space.ref.tabulate(rule.points);
  Vector b = Vector::Zero(space.dim);
  const int nt = static_cast<int>(space.mesh->triangles.size());
  for (int t = 0; t < nt; ++t) {
    const AffineMap map = space.cell_map(t);
    const auto& dofs = space.cell_dofs[t];
    for (size_t q = 0; q < rule.points.size(); ++q) {
      const double w = rule.weights[q] * map.det_abs;
      const double gv = g(map.to_physical(rule.points[q]));
      for (size_t l = 0; l < dofs.size(); ++l)
        b[dofs[l]] += w * gv * tab[q].values[l];
    }
  }

  SolveOptions opts;
  opts.method = SolverMethod::direct;
  opts.tol = 1e-12;
  Vector coef;
  const SolveReport rep = solve_sparse(M, b, coef, opts);
  if (rep.residual_rel > 1e-12)
    throw Error("l2_project: mass solve residual " + std::to_string(rep.residual_rel));
  return coef;
}

} // namespace ndform
