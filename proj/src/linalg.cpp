#include "ndform/linalg.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <cmath>
#include <string>

namespace ndform {

namespace {

using ColMat = Eigen::SparseMatrix<double>;

void check_system(const SparseMat& A, const Vector& b) {
  if (A.rows() != A.cols()) throw std::invalid_argument("solve_sparse: matrix not square");
  if (A.rows() != b.size())
    throw std::invalid_argument("solve_sparse: rhs length does not match matrix");
  if (!b.allFinite()) throw std::invalid_argument("solve_sparse: rhs has non-finite entries");
}

void fill_residual(const SparseMat& A, const Vector& b, const Vector& x, SolveReport& rep) {
  const Vector r = b - A * x;
  rep.residual_abs = r.norm();
  const double bn = b.norm();
  rep.residual_rel = bn > 0.0 ? rep.residual_abs / bn : rep.residual_abs;
}

} // namespace

SolveReport solve_sparse(const SparseMat& A, const Vector& b, Vector& x,
                         const SolveOptions& opts) {
  check_system(A, b);
  configure_threading();

  SolveReport rep;
  rep.method = opts.method;
  const ColMat Ac = A;

  if (opts.method == SolverMethod::direct) {
    Eigen::SparseLU<ColMat> lu;
    lu.compute(Ac);
    if (lu.info() != Eigen::Success)
      throw Error("solve_sparse: LU factorization failed (matrix singular or near-singular)");
    x = lu.solve(b);
    if (!x.allFinite())
      throw Error("solve_sparse: LU produced a non-finite solution; log|det| = " +
                  std::to_string(lu.logAbsDeterminant()));
    fill_residual(A, b, x, rep);
    rep.converged = rep.residual_rel <= std::max(opts.tol, 1e-14);
    return rep;
  }

  Eigen::GMRES<ColMat, Eigen::IncompleteLUT<double>> gmres;
  gmres.preconditioner().setDroptol(1e-8);
  gmres.preconditioner().setFillfactor(40);
  gmres.setTolerance(opts.tol);
  gmres.setMaxIterations(opts.max_iterations);
  gmres.set_restart(50);
  gmres.compute(Ac);
  if (gmres.info() != Eigen::Success)
    throw Error("solve_sparse: GMRES preconditioner setup failed");
  x = gmres.solve(b);
  rep.iterations = static_cast<int>(gmres.iterations());
  if (!x.allFinite()) throw Error("solve_sparse: GMRES produced a non-finite solution");
  fill_residual(A, b, x, rep);
  rep.converged = gmres.info() == Eigen::Success && rep.residual_rel <= opts.tol * 10.0;
  return rep;
}

SparseMat mass_matrix(const Space& space, int quad_degree) {
  const int deg = quad_degree < 0 ? 2 * space.degree + 2 : quad_degree;
  const TriangleQuadRule rule = triangle_quadrature(deg);
  const auto tab = space.ref.tabulate(rule.points);
  const int nloc = space.ref.size();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(space.mesh->triangles.size() * nloc * nloc);
  Eigen::MatrixXd local(nloc, nloc);
  for (int t = 0; t < static_cast<int>(space.mesh->triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    local.setZero();
    for (size_t q = 0; q < rule.points.size(); ++q) {
      const double w = rule.weights[q] * map.det_abs;
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          local(i, j) += w * tab[q].values[i] * tab[q].values[j];
    }
    const auto& dofs = space.cell_dofs[t];
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j) trips.emplace_back(dofs[i], dofs[j], local(i, j));
  }

  SparseMat M(space.dim, space.dim);
  M.setFromTriplets(trips.begin(), trips.end());
  M.makeCompressed();
  return M;
}

SparseMat restrict_to(const SparseMat& A, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  std::vector<int> row_pos(A.rows(), -1), col_pos(A.cols(), -1);
  for (size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
  for (size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = static_cast<int>(j);

  std::vector<Eigen::Triplet<double>> trips;
  for (int r = 0; r < A.outerSize(); ++r) {
    if (row_pos[r] < 0) continue;
    for (SparseMat::InnerIterator it(A, r); it; ++it)
      if (col_pos[it.col()] >= 0)
        trips.emplace_back(row_pos[r], col_pos[it.col()], it.value());
  }
  SparseMat out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

double generalized_sigma_min(const SparseMat& B, const SparseMat& M, const SparseMat& S) {
  const Eigen::Index n = B.rows();
  if (B.cols() != n || M.rows() != n || M.cols() != n || S.rows() != n || S.cols() != n)
    throw std::invalid_argument("generalized_sigma_min: shape mismatch");
  if (n == 0) throw std::invalid_argument("generalized_sigma_min: empty system");
  if (n > 5000)
    throw std::invalid_argument("generalized_sigma_min: dense reduction capped at 5000 DOFs");

  const Eigen::MatrixXd Bd = Eigen::MatrixXd(B);
  const Eigen::MatrixXd Md = Eigen::MatrixXd(M);
  const Eigen::MatrixXd Sd = Eigen::MatrixXd(S);

  Eigen::LLT<Eigen::MatrixXd> mllt(Md);
  if (mllt.info() != Eigen::Success)
    throw Error("generalized_sigma_min: M is not SPD on the free DOFs");

  Eigen::LLT<Eigen::MatrixXd> sllt(Sd);
  if (sllt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Sd);
    throw Error("generalized_sigma_min: S is singular on the free DOFs (smallest eigenvalue " +
                std::to_string(es.eigenvalues()(0)) + ")");
  }

  Eigen::MatrixXd G = Bd.transpose() * mllt.solve(Bd);
  G = 0.5 * (G + G.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(G, Sd,
                                                                Eigen::EigenvaluesOnly |
                                                                    Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success)
    throw Error("generalized_sigma_min: generalized eigensolve failed");
  const double lam = ges.eigenvalues()(0);
  return std::sqrt(std::max(lam, 0.0));
}

} // namespace ndform
