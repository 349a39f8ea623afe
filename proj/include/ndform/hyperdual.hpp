#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "ndform/common.hpp"

namespace ndform {

/// Hyper-dual number with two first-order slots and one mixed slot:
/// x = f + d1 e1 + d2 e2 + d12 e1 e2 with e1^2 = e2^2 = 0. Propagating a
/// function through HyperDual arithmetic yields one exact second derivative
/// per pass; hd_derivatives below combines three passes into the full Hessian.
struct HyperDual {
  double f = 0.0, d1 = 0.0, d2 = 0.0, d12 = 0.0;

  HyperDual() = default;
  HyperDual(double f) : f(f) {}
  HyperDual(double f, double d1, double d2, double d12) : f(f), d1(d1), d2(d2), d12(d12) {}
};

inline HyperDual operator+(const HyperDual& a, const HyperDual& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
}
inline HyperDual operator-(const HyperDual& a, const HyperDual& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
}
inline HyperDual operator-(const HyperDual& a) { return {-a.f, -a.d1, -a.d2, -a.d12}; }
inline HyperDual operator*(const HyperDual& a, const HyperDual& b) {
  return {a.f * b.f, a.f * b.d1 + a.d1 * b.f, a.f * b.d2 + a.d2 * b.f,
          a.f * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.f};
}
inline HyperDual operator/(const HyperDual& a, const HyperDual& b) {
  if (b.f == 0.0) throw std::domain_error("HyperDual: division by zero");
  const double inv = 1.0 / b.f;
  const double q = a.f * inv;
  const double d1 = (a.d1 - q * b.d1) * inv;
  const double d2 = (a.d2 - q * b.d2) * inv;
  const double d12 = (a.d12 - d1 * b.d2 - d2 * b.d1 - q * b.d12) * inv;
  return {q, d1, d2, d12};
}

/// Chain rule for a scalar function with first and second derivative g', g''.
inline HyperDual hd_compose(const HyperDual& x, double g, double dg, double ddg) {
  return {g, dg * x.d1, dg * x.d2, dg * x.d12 + ddg * x.d1 * x.d2};
}

inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.f);
  return hd_compose(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  if (x.f <= 0.0) throw std::domain_error("HyperDual: log of non-positive value");
  return hd_compose(x, std::log(x.f), 1.0 / x.f, -1.0 / (x.f * x.f));
}
inline HyperDual sin(const HyperDual& x) {
  const double s = std::sin(x.f), c = std::cos(x.f);
  return hd_compose(x, s, c, -s);
}
inline HyperDual cos(const HyperDual& x) {
  const double s = std::sin(x.f), c = std::cos(x.f);
  return hd_compose(x, c, -s, -c);
}
inline HyperDual sqrt(const HyperDual& x) {
  if (x.f < 0.0) throw std::domain_error("HyperDual: sqrt of negative value");
  if (x.f == 0.0) throw std::domain_error("HyperDual: sqrt not differentiable at 0");
  const double r = std::sqrt(x.f);
  return hd_compose(x, r, 0.5 / r, -0.25 / (r * x.f));
}
inline HyperDual pow(const HyperDual& x, double p) {
  if (x.f < 0.0) throw std::domain_error("HyperDual: pow of negative base");
  if (x.f == 0.0) throw std::domain_error("HyperDual: pow not differentiable at 0");
  const double v = std::pow(x.f, p);
  return hd_compose(x, v, p * v / x.f, p * (p - 1.0) * v / (x.f * x.f));
}
inline HyperDual abs(const HyperDual& x) {
  if (x.f == 0.0) throw std::domain_error("HyperDual: abs not differentiable at 0");
  return x.f > 0.0 ? x : -x;
}

using HdFunction = std::function<HyperDual(const HyperDual&, const HyperDual&)>;

/// Exact value, gradient and Hessian of fn at x via three hyper-dual passes
/// (one mixed, two repeated-direction).
struct HdDerivatives {
  double value = 0.0;
  Vec2 grad = Vec2::Zero();
  Mat2 hess = Mat2::Zero();
};

inline HdDerivatives hd_derivatives(const HdFunction& fn, const Vec2& x) {
  HdDerivatives out;
  const HyperDual mixed = fn(HyperDual(x.x(), 1.0, 0.0, 0.0), HyperDual(x.y(), 0.0, 1.0, 0.0));
  out.value = mixed.f;
  out.grad = Vec2(mixed.d1, mixed.d2);
  const double hxy = mixed.d12;
  const double hxx = fn(HyperDual(x.x(), 1.0, 1.0, 0.0), HyperDual(x.y(), 0.0, 0.0, 0.0)).d12;
  const double hyy = fn(HyperDual(x.x(), 0.0, 0.0, 0.0), HyperDual(x.y(), 1.0, 1.0, 0.0)).d12;
  out.hess << hxx, hxy, hxy, hyy;
  return out;
}

} // namespace ndform
