#pragma once

#include <optional>

#include "ndform/assembly.hpp"
#include "ndform/space.hpp"

namespace ndform {

/// Exact-solution data used for error measurement. grad/hess may be evaluated
/// at interior quadrature points only.
struct ExactFields {
  ScalarField value;
  std::function<Vec2(const Vec2&)> grad;
  std::function<Mat2(const Vec2&)> hess;

  static ExactFields zero();
};

/// Error norms of u - u_h in L^p, the W^{1,p} seminorm, and the mesh-dependent
/// W^{2,p} norm split into its two parts:
///   err_hess = || D^2_h (u - u_h) ||_{L^p}        (broken Hessian)
///   err_jump = ( sum_e h_e^{1-p} || [[grad u_h]] ||^p_{L^p(e)} )^{1/p}
///   err_w2ph = err_hess + err_jump
/// The jump sum runs over interior edges; the exact gradient is continuous, so
/// only u_h contributes to the jump.
struct ErrorReport {
  double p = 2.0;
  double err_lp = 0.0;
  double err_w1p = 0.0;
  double err_hess = 0.0;
  double err_jump = 0.0;
  double err_w2ph = 0.0;
  double h = 0.0;
  int ndof = 0;
};

ErrorReport error_norms(const Space& space, const Vector& coef, const ExactFields& exact,
                        double p = 2.0, const AssemblyOptions& opts = {});

/// Norms of an FE function itself (errors against the zero function).
ErrorReport fe_norms(const Space& space, const Vector& coef, double p = 2.0,
                     const AssemblyOptions& opts = {});

/// Observed orders log(e_{i-1}/e_i) / log(h_{i-1}/h_i); entry 0 and any pair
/// with a non-positive error or equal mesh sizes is left empty.
std::vector<std::optional<double>> eoc(const std::vector<double>& errors,
                                       const std::vector<double>& hs);

/// Discrete dual norm of a scalar field w against the space:
///   sup_{v_h} (w, v_h) / ||v_h||_{L^{p'}}  with 1/p + 1/p' = 1.
/// For p = 2 this is computed exactly as sqrt(r^T M^{-1} r) with r_i = (w, phi_i).
/// For p != 2 the supremum is approximated from below by testing with the
/// L^2 Riesz representative M^{-1} r; this is the documented approximation and
/// reduces to the exact value at p = 2.
double discrete_lph_norm(const Space& space, const ScalarField& w, double p = 2.0,
                         const AssemblyOptions& opts = {});

} // namespace ndform
