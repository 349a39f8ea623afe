#pragma once

#include "ndform/assembly.hpp"
#include "ndform/problems.hpp"

namespace ndform {

/// Gram matrix S of the squared mesh-dependent W^{2,2} norm:
///   w^T S w = || D^2_h w_h ||^2_{L^2} + sum_e h_e^{-1} || [[grad w_h]] ||^2_{L^2(e)}
/// with the edge sum over interior edges. S is SPD on the zero-trace subspace;
/// its kernel on the full space is spanned by global affine functions.
SparseMat w2h_gram_matrix(const Space& space, const AssemblyOptions& opts = {});

/// Discrete inf-sup constant of the method for coefficient A on this space:
/// the smallest sigma with B_ff^T M_ff^{-1} B_ff w = sigma^2 S_ff w on the free
/// DOFs, where B is the c0dg matrix, M the mass matrix and S the Gram matrix
/// above. Theory backs k >= 2; k = 1 is computable and left to callers to flag.
double infsup_constant(const Space& space, const CoefficientField& A,
                       const AssemblyOptions& opts = {});

struct StabilityReport {
  struct Row {
    int level = 0;
    int n = 0;
    double h = 0.0;
    int ndof_free = 0;
    double sigma_min = 0.0;
  };
  std::string problem;
  int degree = 0;
  std::vector<Row> rows;
  double elapsed_seconds = 0.0;
};

/// Runs the inf-sup probe over a strictly refining level sequence.
StabilityReport run_infsup(const std::string& problem_id, int degree,
                           const std::vector<int>& levels,
                           const AssemblyOptions& opts = {});

} // namespace ndform
