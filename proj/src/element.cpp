#include "ndform/element.hpp"

#include <algorithm>
#include <cmath>

namespace ndform {

namespace {

// Bivariate polynomial on a dense (K+1)x(K+1) coefficient grid; c(a,b)
// multiplies x^a y^b. Only used at element construction time.
struct Poly2 {
  int K;
  std::vector<double> c;

  explicit Poly2(int K) : K(K), c(static_cast<size_t>(K + 1) * (K + 1), 0.0) {}

  double& at(int a, int b) { return c[static_cast<size_t>(a) * (K + 1) + b]; }
  double at(int a, int b) const { return c[static_cast<size_t>(a) * (K + 1) + b]; }
};

Poly2 poly_linear(int K, double cx, double cy, double c0) {
  Poly2 p(K);
  p.at(0, 0) = c0;
  p.at(1, 0) = cx;
  p.at(0, 1) = cy;
  return p;
}

Poly2 poly_mul(const Poly2& u, const Poly2& v) {
  Poly2 out(u.K);
  for (int a1 = 0; a1 <= u.K; ++a1)
    for (int b1 = 0; a1 + b1 <= u.K; ++b1) {
      const double cu = u.at(a1, b1);
      if (cu == 0.0) continue;
      for (int a2 = 0; a1 + a2 <= u.K; ++a2)
        for (int b2 = 0; a1 + b1 + a2 + b2 <= u.K; ++b2) {
          const double cv = v.at(a2, b2);
          if (cv != 0.0) out.at(a1 + a2, b1 + b2) += cu * cv;
        }
    }
  return out;
}

Poly2 poly_dx(const Poly2& u) {
  Poly2 out(u.K);
  for (int a = 1; a <= u.K; ++a)
    for (int b = 0; a + b <= u.K; ++b) out.at(a - 1, b) = a * u.at(a, b);
  return out;
}

Poly2 poly_dy(const Poly2& u) {
  Poly2 out(u.K);
  for (int a = 0; a <= u.K; ++a)
    for (int b = 1; a + b <= u.K; ++b) out.at(a, b - 1) = b * u.at(a, b);
  return out;
}

double poly_eval(const std::vector<double>& c, int K, double x, double y) {
  // Powers up to K are tiny arrays; direct summation is accurate enough here.
  double xp[8], yp[8];
  xp[0] = yp[0] = 1.0;
  for (int i = 1; i <= K; ++i) {
    xp[i] = xp[i - 1] * x;
    yp[i] = yp[i - 1] * y;
  }
  double s = 0.0;
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b) {
      const double cc = c[static_cast<size_t>(a) * (K + 1) + b];
      if (cc != 0.0) s += cc * xp[a] * yp[b];
    }
  return s;
}

// Legendre polynomial P_n and derivative at x, by recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  std::vector<double> x(n), w(n);
  // Newton on P_n from the Chebyshev initial guess; nodes come out mirrored so
  // only the first half is iterated.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, xi, p, dp);
      const double step = p / dp;
      xi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    legendre(n, xi, p, dp);
    x[i] = -std::abs(xi);
    x[n - 1 - i] = std::abs(xi);
    const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  points.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    points[i] = 0.5 * (x[i] + 1.0);
    weights[i] = 0.5 * w[i];
  }
}

EdgeQuadRule edge_quadrature(int degree) {
  if (degree < 0 || degree > 15)
    throw std::invalid_argument("edge_quadrature: degree must be in 0..15");
  EdgeQuadRule rule;
  const int n = (degree + 2) / 2;
  gauss_legendre_01(n, rule.points, rule.weights);
  rule.exactness = degree;
  return rule;
}

TriangleQuadRule triangle_quadrature(int degree) {
  if (degree < 0 || degree > 12)
    throw std::invalid_argument("triangle_quadrature: degree must be in 0..12");

  TriangleQuadRule rule;
  rule.exactness = degree;

  if (degree <= 1) {
    rule.points = {Vec2(1.0 / 3.0, 1.0 / 3.0)};
    rule.weights = {0.5};
    return rule;
  }
  if (degree == 2) {
    rule.points = {Vec2(1.0 / 6.0, 1.0 / 6.0), Vec2(2.0 / 3.0, 1.0 / 6.0),
                   Vec2(1.0 / 6.0, 2.0 / 3.0)};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  if (degree <= 5) {
    const double s15 = std::sqrt(15.0);
    const double g1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 2400.0;
    const double g2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 2400.0;
    rule.points = {Vec2(1.0 / 3.0, 1.0 / 3.0),
                   Vec2(g1, g1), Vec2(1.0 - 2.0 * g1, g1), Vec2(g1, 1.0 - 2.0 * g1),
                   Vec2(g2, g2), Vec2(1.0 - 2.0 * g2, g2), Vec2(g2, 1.0 - 2.0 * g2)};
    rule.weights = {9.0 / 80.0, w1, w1, w1, w2, w2, w2};
    return rule;
  }

  // Conical product rule from Gauss-Legendre factors, then averaged over the
  // six triangle symmetries so the rule is exactly symmetric.
  const int m = (degree + 3) / 2;
  std::vector<double> gp, gw;
  gauss_legendre_01(m, gp, gw);

  std::vector<Vec2> base_pts;
  std::vector<double> base_wts;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      base_pts.emplace_back(gp[i], gp[j] * (1.0 - gp[i]));
      base_wts.push_back(gw[i] * gw[j] * (1.0 - gp[i]));
    }

  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms) {
    for (size_t q = 0; q < base_pts.size(); ++q) {
      const double bary[3] = {1.0 - base_pts[q].x() - base_pts[q].y(),
                              base_pts[q].x(), base_pts[q].y()};
      rule.points.emplace_back(bary[p[1]], bary[p[2]]);
      rule.weights.push_back(base_wts[q] / 6.0);
    }
  }
  return rule;
}

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  if (degree < 1 || degree > 4)
    throw std::invalid_argument("ReferenceElement: degree must be in 1..4");

  const int k = degree;
  for (int j = 0; j <= k; ++j)
    for (int i = 0; i <= k - j; ++i) {
      nodes_.emplace_back(static_cast<double>(i) / k, static_cast<double>(j) / k);
      lattice_.push_back({i, j});
    }

  coeffs_.resize(nodes_.size());
  for (size_t l = 0; l < nodes_.size(); ++l) {
    const int i = lattice_[l][0], j = lattice_[l][1], m = k - i - j;
    Poly2 p(k);
    p.at(0, 0) = 1.0;
    for (int r = 0; r < i; ++r)
      p = poly_mul(p, poly_linear(k, static_cast<double>(k) / (i - r), 0.0,
                                  static_cast<double>(-r) / (i - r)));
    for (int s = 0; s < j; ++s)
      p = poly_mul(p, poly_linear(k, 0.0, static_cast<double>(k) / (j - s),
                                  static_cast<double>(-s) / (j - s)));
    for (int t = 0; t < m; ++t)
      p = poly_mul(p, poly_linear(k, static_cast<double>(-k) / (m - t),
                                  static_cast<double>(-k) / (m - t),
                                  static_cast<double>(k - t) / (m - t)));

    const Poly2 px = poly_dx(p), py = poly_dy(p);
    coeffs_[l] = {p.c, px.c, py.c, poly_dx(px).c, poly_dy(px).c, poly_dy(py).c};
  }
}

void ReferenceElement::eval(const Vec2& p, BasisEval& out) const {
  const int n = size(), k = degree_;
  out.resize(n);
  for (int l = 0; l < n; ++l) {
    out.values[l] = poly_eval(coeffs_[l][0], k, p.x(), p.y());
    out.grads[l] = Vec2(poly_eval(coeffs_[l][1], k, p.x(), p.y()),
                        poly_eval(coeffs_[l][2], k, p.x(), p.y()));
    const double hxx = poly_eval(coeffs_[l][3], k, p.x(), p.y());
    const double hxy = poly_eval(coeffs_[l][4], k, p.x(), p.y());
    const double hyy = poly_eval(coeffs_[l][5], k, p.x(), p.y());
    out.hess[l] << hxx, hxy, hxy, hyy;
  }
}

BasisEval ReferenceElement::eval(const Vec2& p) const {
  BasisEval out;
  eval(p, out);
  return out;
}

std::vector<BasisEval> ReferenceElement::tabulate(const std::vector<Vec2>& points) const {
  std::vector<BasisEval> tab(points.size());
  for (size_t q = 0; q < points.size(); ++q) eval(points[q], tab[q]);
  return tab;
}

std::vector<int> ReferenceElement::edge_nodes(int le) const {
  if (le < 0 || le > 2) throw std::invalid_argument("edge_nodes: local edge must be 0..2");
  const int k = degree_;
  auto node_id = [this](int i, int j) {
    for (size_t l = 0; l < lattice_.size(); ++l)
      if (lattice_[l][0] == i && lattice_[l][1] == j) return static_cast<int>(l);
    throw std::logic_error("edge_nodes: lattice lookup failed");
  };
  std::vector<int> ids;
  ids.reserve(k + 1);
  for (int r = 0; r <= k; ++r) {
    if (le == 0) ids.push_back(node_id(r, 0));
    else if (le == 1) ids.push_back(node_id(k - r, r));
    else ids.push_back(node_id(0, k - r));
  }
  return ids;
}

AffineMap AffineMap::from_triangle(const Vec2& v0, const Vec2& v1, const Vec2& v2) {
  AffineMap map;
  map.origin = v0;
  map.J.col(0) = v1 - v0;
  map.J.col(1) = v2 - v0;
  const double det = map.J.determinant();
  if (!(std::abs(det) > 0.0))
    throw std::invalid_argument("AffineMap: degenerate triangle");
  map.det_abs = std::abs(det);
  map.Jinv << map.J(1, 1) / det, -map.J(0, 1) / det, -map.J(1, 0) / det, map.J(0, 0) / det;
  map.JinvT = map.Jinv.transpose();
  return map;
}

void physical_derivatives(const AffineMap& map, BasisEval& io) {
  for (size_t l = 0; l < io.grads.size(); ++l) {
    io.grads[l] = map.JinvT * io.grads[l];
    io.hess[l] = map.JinvT * io.hess[l] * map.Jinv;
  }
}

} // namespace ndform
