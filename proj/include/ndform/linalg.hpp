#pragma once

#include <vector>

#include "ndform/common.hpp"
#include "ndform/space.hpp"

namespace ndform {

enum class SolverMethod { direct, iterative };

struct SolveOptions {
  SolverMethod method = SolverMethod::direct;
  double tol = 1e-10;
  int max_iterations = 2000;
};

/// Outcome of a sparse solve. residual_rel is recomputed from the returned
/// solution (||b - Ax|| / ||b||, absolute when b = 0), independent of any
/// estimate the backend reports.
struct SolveReport {
  SolverMethod method = SolverMethod::direct;
  bool converged = false;
  int iterations = 0;
  double residual_abs = 0.0;
  double residual_rel = 0.0;
};

/// Solves Ax = b. Direct path: sparse LU; a singular or numerically unusable
/// factorization throws Error with a diagnostic. Iterative path: restarted
/// GMRES with an incomplete-LU preconditioner; non-convergence is reported via
/// converged = false together with the best residual reached.
SolveReport solve_sparse(const SparseMat& A, const Vector& b, Vector& x,
                         const SolveOptions& opts = {});

/// Finite element mass matrix of the space (SPD).
SparseMat mass_matrix(const Space& space, int quad_degree = -1);

/// Submatrix A(rows, cols) as a sparse matrix.
SparseMat restrict_to(const SparseMat& A, const std::vector<int>& rows,
                      const std::vector<int>& cols);

/// Smallest generalized singular value sigma >= 0 with
/// sigma^2 = min eig of (B^T M^{-1} B) w = sigma^2 S w, inputs already
/// restricted to free DOFs. Dense reduction; sizes above 5000 are rejected.
/// M must be SPD; an S that is singular on the free DOFs raises Error with the
/// near-kernel eigenvalue in the message.
double generalized_sigma_min(const SparseMat& B, const SparseMat& M, const SparseMat& S);

} // namespace ndform
