#include "ndform/problems.hpp"

#include <algorithm>
#include <cmath>

namespace ndform {

namespace {

// Eigenvalue bounds of a symmetric 2x2 matrix.
void sym_eig_bounds(const Mat2& A, double& lo, double& hi) {
  const double tr = A(0, 0) + A(1, 1);
  const double disc = std::sqrt(0.25 * (A(0, 0) - A(1, 1)) * (A(0, 0) - A(1, 1)) +
                                A(0, 1) * A(1, 0));
  lo = 0.5 * tr - disc;
  hi = 0.5 * tr + disc;
}

ProblemSpec make_test1() {
  ProblemSpec spec;
  spec.name = "test1";
  spec.domain = {-0.5, 0.5, -0.5, 0.5};
  spec.regularity =
      "A uniformly elliptic, Hoelder continuous with exponent 1/2 at the origin; "
      "u analytic. Expected orders: H1 k, broken H2 k-1.";

  spec.A.tag = Smoothness::hoelder;
  spec.A.lambda_min = 1.0;
  spec.A.lambda_max = 5.41;
  spec.A.eval = [](const Vec2& x) {
    const double s = std::pow(x.squaredNorm(), 0.25);  // |x|^{1/2}
    Mat2 A;
    A << s + 1.0, -s, -s, 5.0 * s + 1.0;
    return A;
  };

  spec.u = [](const Vec2& x) {
    return std::sin(2.0 * M_PI * x.x()) * std::sin(M_PI * x.y()) *
           std::exp(x.x() * std::cos(x.y()));
  };
  spec.u_hd = [](const HyperDual& x, const HyperDual& y) {
    return sin(2.0 * M_PI * x) * sin(M_PI * y) * exp(x * cos(y));
  };
  return spec;
}

ProblemSpec make_test2() {
  ProblemSpec spec;
  spec.name = "test2";
  spec.domain = {0.0, 0.5, 0.0, 0.5};
  spec.regularity =
      "A continuous with a log-modulated corner at the origin; u = |x|^{7/4} is in "
      "H2 but not H3. Expected orders: H1 min(k, 7/4), broken H2 min(k-1, 3/4).";

  spec.A.tag = Smoothness::hoelder;
  spec.A.lambda_min = 2.9;
  spec.A.lambda_max = 30.5;
  spec.A.eval = [](const Vec2& x) {
    const double r = std::max(x.norm(), 1e-14);
    const double L = std::log(r);
    Mat2 A;
    A << -5.0 / L + 15.0, 1.0, 1.0, -1.0 / L + 3.0;
    return A;
  };

  spec.u = [](const Vec2& x) { return std::pow(x.squaredNorm(), 0.875); };
  spec.u_hd = [](const HyperDual& x, const HyperDual& y) {
    return pow(x * x + y * y, 0.875);
  };
  return spec;
}

ProblemSpec make_test3() {
  ProblemSpec spec;
  spec.name = "test3";
  spec.domain = {0.0, 1.0, 0.0, 1.0};
  spec.regularity =
      "A = grad(u) grad(u)^T is rank one (det A = 0) and only Hoelder continuous; "
      "u = x1^{4/3} - x2^{4/3} is in W^{2,p} for p < 3/2 only. The load is exactly "
      "zero. Expected orders at k = 2: L2 4/3, H1 5/6.";

  spec.A.tag = Smoothness::degenerate;
  spec.A.lambda_min = 0.0;
  spec.A.lambda_max = 3.6;
  spec.A.eval = [](const Vec2& x) {
    const double cx = std::cbrt(x.x()), cy = std::cbrt(x.y());
    Mat2 A;
    A << (16.0 / 9.0) * cx * cx, -(16.0 / 9.0) * cx * cy, -(16.0 / 9.0) * cx * cy,
        (16.0 / 9.0) * cy * cy;
    return A;
  };

  spec.u = [](const Vec2& x) {
    return std::pow(x.x(), 4.0 / 3.0) - std::pow(x.y(), 4.0 / 3.0);
  };
  spec.u_hd = [](const HyperDual& x, const HyperDual& y) {
    return pow(x, 4.0 / 3.0) - pow(y, 4.0 / 3.0);
  };
  spec.f = [](const Vec2&) { return 0.0; };
  return spec;
}

ProblemSpec make_smooth() {
  ProblemSpec spec;
  spec.name = "smooth";
  spec.domain = {0.0, 1.0, 0.0, 1.0};
  spec.regularity = "A and u smooth; baseline problem for cross-method comparison.";

  spec.A.tag = Smoothness::smooth;
  spec.A.lambda_min = 1.0;
  spec.A.lambda_max = 3.0;
  spec.A.eval = [](const Vec2& x) {
    Mat2 A;
    A << 1.0 + x.x() * x.x(), 0.5 * x.x() * x.y(), 0.5 * x.x() * x.y(),
        1.0 + x.y() * x.y();
    return A;
  };
  spec.A.div_rows = [](const Vec2& x) { return Vec2(2.5 * x.x(), 2.5 * x.y()); };

  spec.u = [](const Vec2& x) { return std::sin(M_PI * x.x()) * std::sin(M_PI * x.y()); };
  spec.u_hd = [](const HyperDual& x, const HyperDual& y) {
    return sin(M_PI * x) * sin(M_PI * y);
  };
  return spec;
}

ProblemSpec make_manufactured_poly() {
  ProblemSpec spec = make_test1();
  spec.name = "manufactured_poly";
  spec.regularity =
      "u = x1 x2 lies in every discrete space with k >= 2, so the discrete solution "
      "reproduces the interpolant to solver precision; A as in test1.";
  spec.u = [](const Vec2& x) { return x.x() * x.y(); };
  spec.u_hd = [](const HyperDual& x, const HyperDual& y) { return x * y; };
  return spec;
}

void finalize(ProblemSpec& spec) {
  const HdFunction u_hd = spec.u_hd;
  spec.grad_u = [u_hd](const Vec2& x) { return hd_derivatives(u_hd, x).grad; };
  spec.hess_u = [u_hd](const Vec2& x) { return hd_derivatives(u_hd, x).hess; };
  if (!spec.f) {
    const auto A = spec.A.eval;
    const auto hess = spec.hess_u;
    spec.f = [A, hess](const Vec2& x) {
      const Mat2 a = A(x), h = hess(x);
      return -(a(0, 0) * h(0, 0) + a(0, 1) * h(0, 1) + a(1, 0) * h(1, 0) +
               a(1, 1) * h(1, 1));
    };
  }
  spec.g = spec.u;
}

} // namespace

CoefficientField CoefficientField::constant(const Mat2& A0) {
  if (std::abs(A0(0, 1) - A0(1, 0)) > 1e-12 * A0.cwiseAbs().maxCoeff())
    throw std::invalid_argument("CoefficientField::constant: A0 must be symmetric");
  double lo, hi;
  sym_eig_bounds(A0, lo, hi);
  if (lo <= 0.0)
    throw std::invalid_argument("CoefficientField::constant: A0 must be positive definite");
  CoefficientField field;
  field.tag = Smoothness::constant;
  field.lambda_min = lo;
  field.lambda_max = hi;
  field.eval = [A0](const Vec2&) { return A0; };
  field.div_rows = [](const Vec2&) { return Vec2::Zero().eval(); };
  return field;
}

ProblemSpec problem(const std::string& id) {
  ProblemSpec spec;
  if (id == "test1") spec = make_test1();
  else if (id == "test2") spec = make_test2();
  else if (id == "test3") spec = make_test3();
  else if (id == "smooth") spec = make_smooth();
  else if (id == "manufactured_poly") spec = make_manufactured_poly();
  else throw std::invalid_argument("problem: unknown id '" + id + "'");
  finalize(spec);
  return spec;
}

const std::vector<std::string>& problem_ids() {
  static const std::vector<std::string> ids = {"test1", "test2", "test3", "smooth",
                                               "manufactured_poly"};
  return ids;
}

double rhs_eval(const ProblemSpec& spec, const Vec2& x) {
  const Mat2 a = spec.A.eval(x), h = spec.hess_u(x);
  return -(a(0, 0) * h(0, 0) + a(0, 1) * h(0, 1) + a(1, 0) * h(1, 0) + a(1, 1) * h(1, 1));
}

RateHints expected_rates(const ProblemSpec& spec, int degree) {
  RateHints hints;
  const double k = degree;
  if (spec.name == "test1") {
    hints.h1 = k;
    hints.h2 = k - 1.0;
  } else if (spec.name == "test2") {
    hints.h1 = std::min(k, 1.75);
    hints.h2 = std::min(k - 1.0, 0.75);
  } else if (spec.name == "test3") {
    hints.l2 = 4.0 / 3.0;
    hints.h1 = 5.0 / 6.0;
  } else if (spec.name == "smooth") {
    hints.l2 = k + 1.0;
    hints.h1 = k;
    hints.h2 = k - 1.0;
  }
  return hints;
}

} // namespace ndform
