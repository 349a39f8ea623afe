#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ndform/hyperdual.hpp"

using namespace ndform;

namespace {

// Independent oracle: fourth-order central differences on the plain-double
// version of the same expression.
struct Fd {
  std::function<double(double, double)> f;
  double h = 1e-3;

  double dx(double x, double y) const {
    return (-f(x + 2 * h, y) + 8 * f(x + h, y) - 8 * f(x - h, y) + f(x - 2 * h, y)) /
           (12 * h);
  }
  double dy(double x, double y) const {
    return (-f(x, y + 2 * h) + 8 * f(x, y + h) - 8 * f(x, y - h) + f(x, y - 2 * h)) /
           (12 * h);
  }
  double dxx(double x, double y) const {
    return (-f(x + 2 * h, y) + 16 * f(x + h, y) - 30 * f(x, y) + 16 * f(x - h, y) -
            f(x - 2 * h, y)) /
           (12 * h * h);
  }
  double dyy(double x, double y) const {
    return (-f(x, y + 2 * h) + 16 * f(x, y + h) - 30 * f(x, y) + 16 * f(x, y - h) -
            f(x, y - 2 * h)) /
           (12 * h * h);
  }
  double dxy(double x, double y) const {
    static const double c[4] = {-1.0 / 12, 8.0 / 12, -8.0 / 12, 1.0 / 12};
    static const int o[4] = {2, 1, -1, -2};
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += c[i] * c[j] * f(x + o[i] * h, y + o[j] * h);
    return s / (h * h);
  }
};

} // namespace

TEST_CASE("hand-computed fixture: u = x^2 y at (1,2)") {
  const HdFunction u = [](const HyperDual& x, const HyperDual& y) { return x * x * y; };
  const HdDerivatives d = hd_derivatives(u, Vec2(1.0, 2.0));
  CHECK(d.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.grad.x() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.grad.y() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.hess(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.hess(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.hess(1, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(d.hess(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("hand-computed fixture: u = sin(x) at (pi/2, 0)") {
  const HdFunction u = [](const HyperDual& x, const HyperDual&) { return sin(x); };
  const HdDerivatives d = hd_derivatives(u, Vec2(M_PI / 2, 0.0));
  CHECK(d.value == doctest::Approx(1.0));
  CHECK(d.grad.norm() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d.hess(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(d.hess(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("AD matches finite differences on a composite expression") {
  const HdFunction u = [](const HyperDual& x, const HyperDual& y) {
    return exp(x * cos(y)) + log(HyperDual(3.0) + x * y) * sin(x) -
           pow(x * x + y * y + HyperDual(0.5), 1.25) / (HyperDual(2.0) + cos(x));
  };
  const Fd fd{[](double x, double y) {
    return std::exp(x * std::cos(y)) + std::log(3.0 + x * y) * std::sin(x) -
           std::pow(x * x + y * y + 0.5, 1.25) / (2.0 + std::cos(x));
  }};

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uni(-0.8, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = uni(rng), y = uni(rng);
    const HdDerivatives d = hd_derivatives(u, Vec2(x, y));
    const double scale = std::max(1.0, std::abs(d.value));
    CHECK(std::abs(d.grad.x() - fd.dx(x, y)) / scale < 1e-8);
    CHECK(std::abs(d.grad.y() - fd.dy(x, y)) / scale < 1e-8);
    CHECK(std::abs(d.hess(0, 0) - fd.dxx(x, y)) / scale < 1e-5);
    CHECK(std::abs(d.hess(1, 1) - fd.dyy(x, y)) / scale < 1e-5);
    CHECK(std::abs(d.hess(0, 1) - fd.dxy(x, y)) / scale < 1e-5);
  }
}

TEST_CASE("quotient and sqrt propagate second derivatives") {
  const HdFunction u = [](const HyperDual& x, const HyperDual& y) {
    return sqrt(x * x + y * y) / (HyperDual(1.0) + x * y);
  };
  const Fd fd{[](double x, double y) {
    return std::sqrt(x * x + y * y) / (1.0 + x * y);
  }};
  const double x = 0.7, y = -0.4;
  const HdDerivatives d = hd_derivatives(u, Vec2(x, y));
  CHECK(d.value == doctest::Approx(fd.f(x, y)).epsilon(1e-14));
  CHECK(d.hess(0, 1) == doctest::Approx(fd.dxy(x, y)).epsilon(1e-7));
  CHECK(d.hess(0, 0) == doctest::Approx(fd.dxx(x, y)).epsilon(1e-7));
}

TEST_CASE("non-differentiable points raise domain errors") {
  const HyperDual zero(0.0, 1.0, 0.0, 0.0);
  const HyperDual negative(-1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(abs(zero), std::domain_error);
  CHECK_THROWS_AS(sqrt(negative), std::domain_error);
  CHECK_THROWS_AS(sqrt(zero), std::domain_error);
  CHECK_THROWS_AS(log(zero), std::domain_error);
  CHECK_THROWS_AS(log(negative), std::domain_error);
  CHECK_THROWS_AS(pow(zero, 0.5), std::domain_error);
  CHECK_THROWS_AS(HyperDual(1.0) / HyperDual(0.0, 1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("abs is exact away from the kink") {
  const HdFunction u = [](const HyperDual& x, const HyperDual& y) {
    return abs(x * y - HyperDual(1.0));
  };
  const HdDerivatives d = hd_derivatives(u, Vec2(0.5, 0.5));  // x y - 1 < 0
  CHECK(d.value == doctest::Approx(0.75));
  CHECK(d.grad.x() == doctest::Approx(-0.5));
  CHECK(d.hess(0, 1) == doctest::Approx(-1.0));
}
