#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ndform/common.hpp"
#include "ndform/hyperdual.hpp"
#include "ndform/space.hpp"

namespace ndform {

enum class Smoothness { constant, smooth, hoelder, degenerate };

/// Matrix coefficient A(x) with registered ellipticity bounds: eigenvalues of
/// A(x) lie in [lambda_min, lambda_max] over the closed domain. div_rows is
/// the row-wise divergence (only set when A is smooth enough to use it).
struct CoefficientField {
  std::function<Mat2(const Vec2&)> eval;
  Smoothness tag = Smoothness::smooth;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::function<Vec2(const Vec2&)> div_rows;

  static CoefficientField constant(const Mat2& A0);
};

/// Expected asymptotic orders for the convergence harness; < 0 when the
/// problem makes no claim for that norm.
struct RateHints {
  double l2 = -1.0;
  double h1 = -1.0;
  double h2 = -1.0;
};

/// A registered benchmark: domain, coefficient, exact solution and load.
///
/// u is the closed-form value (safe on the closed domain, corners included);
/// u_hd is the same function in hyper-dual form and is only evaluated at
/// points where u is twice differentiable (all quadrature points are interior,
/// so this holds in every assembly and error loop). grad_u / hess_u derive
/// from u_hd. f is the registered load; for test3 it is identically zero.
struct ProblemSpec {
  std::string name;
  Rect domain;
  CoefficientField A;
  ScalarField u;
  HdFunction u_hd;
  std::function<Vec2(const Vec2&)> grad_u;
  std::function<Mat2(const Vec2&)> hess_u;
  ScalarField f;
  ScalarField g;
  std::string regularity;
};

/// Looks up a problem by id: test1, test2, test3, smooth, manufactured_poly.
/// Unknown ids are rejected.
ProblemSpec problem(const std::string& id);

const std::vector<std::string>& problem_ids();

/// Load implied by the registered solution and coefficient, -A(x) : D^2 u(x),
/// evaluated through the AD Hessian. Matches .f up to roundoff where u is
/// twice differentiable (for test3 the cancellation is exact only analytically,
/// so this returns roundoff-size values while .f returns exactly 0).
double rhs_eval(const ProblemSpec& spec, const Vec2& x);

RateHints expected_rates(const ProblemSpec& spec, int degree);

} // namespace ndform
