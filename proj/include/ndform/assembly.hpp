#pragma once

#include <iosfwd>

#include "ndform/problems.hpp"
#include "ndform/space.hpp"

namespace ndform {

/// Quadrature degree overrides; -1 selects the defaults 2k+2 (volume) and
/// 2k+1 (edge) for a degree-k space.
struct AssemblyOptions {
  int quad_volume = -1;
  int quad_edge = -1;

  int volume_degree(int k) const { return quad_volume < 0 ? 2 * k + 2 : quad_volume; }
  int edge_degree(int k) const { return quad_edge < 0 ? 2 * k + 1 : quad_edge; }
};

/// Nonsymmetric system matrix of the C0 interior-gradient-jump method:
/// entry (i,j) = -sum_T int_T (A : D^2 phi_j) phi_i
///             + sum_e int_e [[A grad phi_j]] phi_i
/// where the edge sum runs over interior edges with the two-sided normal flux
/// jump, plus the one-sided flux on boundary edges. With the boundary term the
/// matrix coincides entrywise with assemble_constcoef when A is constant;
/// rows of interior (zero-trace) test functions are unaffected by it.
SparseMat assemble_c0dg(const Space& space, const CoefficientField& A,
                        const AssemblyOptions& opts = {});

/// Symmetric stiffness matrix int_Omega (A0 grad phi_j) . grad phi_i for a
/// constant SPD A0. Oracle twin of assemble_c0dg for constant coefficients.
SparseMat assemble_constcoef(const Space& space, const Mat2& A0,
                             const AssemblyOptions& opts = {});

/// Matrix of the divergence-form baseline
/// int (A grad phi_j) . grad phi_i + int (divA . grad phi_j) phi_i,
/// valid only for coefficient tags smooth or constant (divA must be given).
SparseMat assemble_divform(const Space& space, const CoefficientField& A,
                           const AssemblyOptions& opts = {});

/// Load vector int f phi_i, using the same volume rule as the matrix
/// assemblies so polynomial consistency cancels at quadrature points.
Vector assemble_rhs(const Space& space, const ScalarField& f,
                    const AssemblyOptions& opts = {});

/// Constrained linear system after Dirichlet elimination.
struct LinearSystem {
  SparseMat matrix;
  Vector rhs;
  std::vector<int> free_dofs;
  std::vector<int> constrained_dofs;
  Vector constrained_values;
};

/// Imposes u = g on boundary DOFs by nodal interpolation: constrained rows
/// become identity rows with rhs g_i, and couplings from free rows move to the
/// right-hand side.
LinearSystem apply_dirichlet(SparseMat matrix, Vector rhs, const Space& space,
                             const ScalarField& g);

/// Coordinate text export (one "row col value" line per entry) for debugging.
void export_matrix_text(const SparseMat& A, std::ostream& out);

} // namespace ndform
