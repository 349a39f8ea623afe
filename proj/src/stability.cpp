#include "ndform/stability.hpp"

#include <chrono>
#include <cmath>

#include "ndform/linalg.hpp"

namespace ndform {

SparseMat w2h_gram_matrix(const Space& space, const AssemblyOptions& opts) {
  const Mesh& mesh = *space.mesh;
  const int k = space.degree, nloc = space.ref.size();
  std::vector<Eigen::Triplet<double>> trips;

  // Hessian part.
  const TriangleQuadRule vol = triangle_quadrature(opts.volume_degree(k));
  const auto vtab = space.ref.tabulate(vol.points);
  Eigen::MatrixXd local(nloc, nloc);
  std::vector<Mat2> hess(nloc);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    local.setZero();
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double w = vol.weights[q] * map.det_abs;
      for (int j = 0; j < nloc; ++j) hess[j] = map.JinvT * vtab[q].hess[j] * map.Jinv;
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          local(i, j) += w * hess[i].cwiseProduct(hess[j]).sum();
    }
    const auto& dofs = space.cell_dofs[t];
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trips.emplace_back(dofs[i], dofs[j], local(i, j));
  }

  // Gradient-jump part. The jump of basis function l splits into one-sided
  // contributions; assembling the four side-by-side blocks sums them exactly.
  const EdgeQuadRule erule = edge_quadrature(opts.edge_degree(k));
  for (const EdgeRecord& rec : mesh.edges) {
    if (rec.is_boundary()) continue;
    const Vec2 a = mesh.vertices[rec.v[0]];
    const Vec2 b = mesh.vertices[rec.v[1]];
    const int tri_of[2] = {rec.plus_triangle, rec.minus_triangle};
    const AffineMap maps[2] = {space.cell_map(tri_of[0]), space.cell_map(tri_of[1])};
    const double sign[2] = {1.0, -1.0};

    for (size_t q = 0; q < erule.points.size(); ++q) {
      const Vec2 x = a + erule.points[q] * (b - a);
      // The h_e^{-1} scaling cancels the edge measure h_e exactly.
      const double w = erule.weights[q];
      std::vector<double> jump[2];
      for (int s = 0; s < 2; ++s) {
        const BasisEval be = space.ref.eval(maps[s].to_reference(x));
        jump[s].resize(nloc);
        for (int l = 0; l < nloc; ++l)
          jump[s][l] = sign[s] * (maps[s].JinvT * be.grads[l]).dot(rec.normal);
      }
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj) {
          const auto& di = space.cell_dofs[tri_of[si]];
          const auto& dj = space.cell_dofs[tri_of[sj]];
          for (int i = 0; i < nloc; ++i)
            for (int j = 0; j < nloc; ++j)
              trips.emplace_back(di[i], dj[j], w * jump[si][i] * jump[sj][j]);
        }
    }
  }

  SparseMat S(space.dim, space.dim);
  S.setFromTriplets(trips.begin(), trips.end());
  S.makeCompressed();
  return S;
}

double infsup_constant(const Space& space, const CoefficientField& A,
                       const AssemblyOptions& opts) {
  const SparseMat B = assemble_c0dg(space, A, opts);
  const SparseMat M = mass_matrix(space, opts.volume_degree(space.degree));
  const SparseMat S = w2h_gram_matrix(space, opts);
  const auto& free = space.free_dofs;
  if (free.empty()) throw Error("infsup_constant: no free DOFs on this mesh");
  return generalized_sigma_min(restrict_to(B, free, free), restrict_to(M, free, free),
                               restrict_to(S, free, free));
}

StabilityReport run_infsup(const std::string& problem_id, int degree,
                           const std::vector<int>& levels, const AssemblyOptions& opts) {
  if (levels.empty()) throw std::invalid_argument("run_infsup: empty level list");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("run_infsup: levels must be strictly increasing");

  const ProblemSpec spec = problem(problem_id);
  StabilityReport report;
  report.problem = problem_id;
  report.degree = degree;

  const auto t0 = std::chrono::steady_clock::now();
  for (size_t i = 0; i < levels.size(); ++i) {
    auto mesh = std::make_shared<const Mesh>(build_rect_mesh(spec.domain, levels[i]));
    const Space space = build_space(mesh, degree);
    StabilityReport::Row row;
    row.level = static_cast<int>(i);
    row.n = levels[i];
    row.h = mesh->h_max;
    row.ndof_free = static_cast<int>(space.free_dofs.size());
    row.sigma_min = infsup_constant(space, spec.A, opts);
    report.rows.push_back(row);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

} // namespace ndform
