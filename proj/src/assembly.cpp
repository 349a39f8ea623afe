#include "ndform/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace ndform {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

double contract(const Mat2& A, const Mat2& H) {
  return A(0, 0) * H(0, 0) + A(0, 1) * H(0, 1) + A(1, 0) * H(1, 0) + A(1, 1) * H(1, 1);
}

int local_edge_index(const Mesh::Tri& tri, int edge_id) {
  for (int le = 0; le < 3; ++le)
    if (tri.edge[le] == edge_id) return le;
  throw std::logic_error("assembly: edge not found in its triangle");
}

SparseMat from_triplets(int dim, const Triplets& trips) {
  SparseMat A(dim, dim);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

// Flux (A grad phi_j) . n for every basis function of one triangle at one
// physical point, grads taken from the reference tabulation.
void side_fluxes(const BasisEval& basis, const AffineMap& map, const Mat2& A,
                 const Vec2& n, std::vector<double>& flux) {
  const int nloc = static_cast<int>(basis.values.size());
  flux.resize(nloc);
  for (int j = 0; j < nloc; ++j) flux[j] = (A * (map.JinvT * basis.grads[j])).dot(n);
}

} // namespace

SparseMat assemble_c0dg(const Space& space, const CoefficientField& A,
                        const AssemblyOptions& opts) {
  const Mesh& mesh = *space.mesh;
  const int k = space.degree;
  const int nloc = space.ref.size();
  Triplets trips;
  trips.reserve(mesh.triangles.size() * nloc * nloc * 2);

  // Volume term: -(A : D^2 phi_j) phi_i.
  const TriangleQuadRule vol = triangle_quadrature(opts.volume_degree(k));
  const auto vtab = space.ref.tabulate(vol.points);
  std::vector<double> aH(nloc);
  Eigen::MatrixXd local(nloc, nloc);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    local.setZero();
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double w = vol.weights[q] * map.det_abs;
      const Mat2 a = A.eval(map.to_physical(vol.points[q]));
      for (int j = 0; j < nloc; ++j)
        aH[j] = contract(a, map.JinvT * vtab[q].hess[j] * map.Jinv);
      for (int i = 0; i < nloc; ++i) {
        const double vi = w * vtab[q].values[i];
        for (int j = 0; j < nloc; ++j) local(i, j) -= vi * aH[j];
      }
    }
    const auto& dofs = space.cell_dofs[t];
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trips.emplace_back(dofs[i], dofs[j], local(i, j));
  }

  // Edge terms: [[A grad phi_j]] phi_i on interior edges, one-sided flux on
  // boundary edges. Test functions with nonzero trace on an edge are exactly
  // the k+1 nodal functions sitting on it.
  const EdgeQuadRule erule = edge_quadrature(opts.edge_degree(k));
  std::vector<double> flux_p, flux_m;
  for (int e = 0; e < static_cast<int>(mesh.edges.size()); ++e) {
    const EdgeRecord& rec = mesh.edges[e];
    const Vec2 a = mesh.vertices[rec.v[0]];
    const Vec2 b = mesh.vertices[rec.v[1]];

    const int tp = rec.plus_triangle;
    const AffineMap map_p = space.cell_map(tp);
    const auto& dofs_p = space.cell_dofs[tp];
    const auto test_locals = space.ref.edge_nodes(local_edge_index(mesh.triangles[tp], e));

    const int tm = rec.minus_triangle;
    const AffineMap map_m = rec.is_boundary() ? AffineMap() : space.cell_map(tm);

    for (size_t q = 0; q < erule.points.size(); ++q) {
      const Vec2 x = a + erule.points[q] * (b - a);
      const double w = erule.weights[q] * rec.length;
      const Mat2 Ax = A.eval(x);

      const BasisEval basis_p = space.ref.eval(map_p.to_reference(x));
      side_fluxes(basis_p, map_p, Ax, rec.normal, flux_p);
      for (int il : test_locals) {
        const double tv = w * basis_p.values[il];
        for (int j = 0; j < static_cast<int>(dofs_p.size()); ++j)
          trips.emplace_back(dofs_p[il], dofs_p[j], tv * flux_p[j]);
      }

      if (!rec.is_boundary()) {
        const BasisEval basis_m = space.ref.eval(map_m.to_reference(x));
        side_fluxes(basis_m, map_m, Ax, (-rec.normal).eval(), flux_m);
        const auto& dofs_m = space.cell_dofs[tm];
        for (int il : test_locals) {
          const double tv = w * basis_p.values[il];
          for (int j = 0; j < static_cast<int>(dofs_m.size()); ++j)
            trips.emplace_back(dofs_p[il], dofs_m[j], tv * flux_m[j]);
        }
      }
    }
  }

  return from_triplets(space.dim, trips);
}

SparseMat assemble_constcoef(const Space& space, const Mat2& A0,
                             const AssemblyOptions& opts) {
  if (std::abs(A0(0, 1) - A0(1, 0)) > 1e-12 * std::max(1.0, A0.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("assemble_constcoef: A0 must be symmetric");
  const double tr = A0(0, 0) + A0(1, 1), det = A0(0, 0) * A0(1, 1) - A0(0, 1) * A0(1, 0);
  if (!(tr > 0.0 && det > 0.0))
    throw std::invalid_argument("assemble_constcoef: A0 must be positive definite");

  const Mesh& mesh = *space.mesh;
  const int k = space.degree, nloc = space.ref.size();
  const TriangleQuadRule vol = triangle_quadrature(opts.volume_degree(k));
  const auto vtab = space.ref.tabulate(vol.points);

  Triplets trips;
  trips.reserve(mesh.triangles.size() * nloc * nloc);
  Eigen::MatrixXd local(nloc, nloc);
  std::vector<Vec2> grad(nloc);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    local.setZero();
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double w = vol.weights[q] * map.det_abs;
      for (int j = 0; j < nloc; ++j) grad[j] = map.JinvT * vtab[q].grads[j];
      for (int i = 0; i < nloc; ++i) {
        const Vec2 Agi = A0 * grad[i];
        for (int j = 0; j < nloc; ++j) local(i, j) += w * Agi.dot(grad[j]);
      }
    }
    const auto& dofs = space.cell_dofs[t];
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trips.emplace_back(dofs[i], dofs[j], local(i, j));
  }
  return from_triplets(space.dim, trips);
}

SparseMat assemble_divform(const Space& space, const CoefficientField& A,
                           const AssemblyOptions& opts) {
  if (A.tag != Smoothness::smooth && A.tag != Smoothness::constant)
    throw std::invalid_argument(
        "assemble_divform: coefficient must be smooth or constant (divergence form "
        "is not equivalent otherwise)");
  if (!A.div_rows)
    throw std::invalid_argument("assemble_divform: row-wise divergence not provided");

  const Mesh& mesh = *space.mesh;
  const int k = space.degree, nloc = space.ref.size();
  const TriangleQuadRule vol = triangle_quadrature(opts.volume_degree(k));
  const auto vtab = space.ref.tabulate(vol.points);

  Triplets trips;
  trips.reserve(mesh.triangles.size() * nloc * nloc);
  Eigen::MatrixXd local(nloc, nloc);
  std::vector<Vec2> grad(nloc);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    local.setZero();
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double w = vol.weights[q] * map.det_abs;
      const Vec2 x = map.to_physical(vol.points[q]);
      const Mat2 a = A.eval(x);
      const Vec2 diva = A.div_rows(x);
      for (int j = 0; j < nloc; ++j) grad[j] = map.JinvT * vtab[q].grads[j];
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          local(i, j) += w * ((a * grad[j]).dot(grad[i]) +
                              diva.dot(grad[j]) * vtab[q].values[i]);
    }
    const auto& dofs = space.cell_dofs[t];
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trips.emplace_back(dofs[i], dofs[j], local(i, j));
  }
  return from_triplets(space.dim, trips);
}

Vector assemble_rhs(const Space& space, const ScalarField& f, const AssemblyOptions& opts) {
  const Mesh& mesh = *space.mesh;
  const int k = space.degree, nloc = space.ref.size();
  const TriangleQuadRule vol = triangle_quadrature(opts.volume_degree(k));
  const auto vtab = space.ref.tabulate(vol.points);

  Vector b = Vector::Zero(space.dim);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    const auto& dofs = space.cell_dofs[t];
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double wf = vol.weights[q] * map.det_abs * f(map.to_physical(vol.points[q]));
      for (int i = 0; i < nloc; ++i) b[dofs[i]] += wf * vtab[q].values[i];
    }
  }
  return b;
}

LinearSystem apply_dirichlet(SparseMat matrix, Vector rhs, const Space& space,
                             const ScalarField& g) {
  if (matrix.rows() != space.dim || rhs.size() != space.dim)
    throw std::invalid_argument("apply_dirichlet: system does not match the space");

  LinearSystem sys;
  sys.free_dofs = space.free_dofs;
  sys.constrained_dofs = space.boundary_dofs;
  sys.constrained_values.resize(space.boundary_dofs.size());
  Vector values = Vector::Zero(space.dim);
  for (size_t i = 0; i < space.boundary_dofs.size(); ++i) {
    const int dof = space.boundary_dofs[i];
    sys.constrained_values[i] = g(space.dof_coords[dof]);
    values[dof] = sys.constrained_values[i];
  }

  Triplets trips;
  trips.reserve(matrix.nonZeros());
  for (int r = 0; r < matrix.outerSize(); ++r) {
    if (space.on_boundary[r]) continue;
    for (SparseMat::InnerIterator it(matrix, r); it; ++it) {
      if (space.on_boundary[it.col()])
        rhs[r] -= it.value() * values[it.col()];
      else
        trips.emplace_back(r, static_cast<int>(it.col()), it.value());
    }
  }
  for (int dof : space.boundary_dofs) {
    trips.emplace_back(dof, dof, 1.0);
    rhs[dof] = values[dof];
  }

  sys.matrix = from_triplets(space.dim, trips);
  sys.rhs = std::move(rhs);
  return sys;
}

void export_matrix_text(const SparseMat& A, std::ostream& out) {
  out.precision(17);
  for (int r = 0; r < A.outerSize(); ++r)
    for (SparseMat::InnerIterator it(A, r); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
}

} // namespace ndform
