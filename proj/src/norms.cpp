#include "ndform/norms.hpp"

#include <cmath>

#include "ndform/linalg.hpp"

namespace ndform {

ExactFields ExactFields::zero() {
  ExactFields z;
  z.value = [](const Vec2&) { return 0.0; };
  z.grad = [](const Vec2&) { return Vec2::Zero().eval(); };
  z.hess = [](const Vec2&) { return Mat2::Zero().eval(); };
  return z;
}

ErrorReport error_norms(const Space& space, const Vector& coef, const ExactFields& exact,
                        double p, const AssemblyOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("error_norms: p must be finite and > 1");
  if (coef.size() != space.dim)
    throw std::invalid_argument("error_norms: coefficient vector has wrong length");

  const Mesh& mesh = *space.mesh;
  const int k = space.degree, nloc = space.ref.size();

  ErrorReport rep;
  rep.p = p;
  rep.h = mesh.h_max;
  rep.ndof = space.dim;

  double sum_lp = 0.0, sum_w1p = 0.0, sum_hess = 0.0, sum_jump = 0.0;

  const TriangleQuadRule vol = triangle_quadrature(opts.volume_degree(k));
  const auto vtab = space.ref.tabulate(vol.points);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const AffineMap map = space.cell_map(t);
    const auto& dofs = space.cell_dofs[t];
    for (size_t q = 0; q < vol.points.size(); ++q) {
      const double w = vol.weights[q] * map.det_abs;
      double uh = 0.0;
      Vec2 guh = Vec2::Zero();
      Mat2 huh = Mat2::Zero();
      for (int l = 0; l < nloc; ++l) {
        const double c = coef[dofs[l]];
        uh += c * vtab[q].values[l];
        guh += c * vtab[q].grads[l];
        huh += c * vtab[q].hess[l];
      }
      guh = map.JinvT * guh;
      huh = map.JinvT * huh * map.Jinv;

      const Vec2 x = map.to_physical(vol.points[q]);
      const double ev = exact.value(x) - uh;
      const Vec2 eg = exact.grad(x) - guh;
      const Mat2 eh = exact.hess(x) - huh;
      sum_lp += w * std::pow(std::abs(ev), p);
      sum_w1p += w * std::pow(eg.norm(), p);
      sum_hess += w * std::pow(eh.norm(), p);  // Frobenius
    }
  }

  const EdgeQuadRule erule = edge_quadrature(opts.edge_degree(k));
  for (const EdgeRecord& rec : mesh.edges) {
    if (rec.is_boundary()) continue;
    const Vec2 a = mesh.vertices[rec.v[0]];
    const Vec2 b = mesh.vertices[rec.v[1]];
    const AffineMap map_p = space.cell_map(rec.plus_triangle);
    const AffineMap map_m = space.cell_map(rec.minus_triangle);
    const auto& dofs_p = space.cell_dofs[rec.plus_triangle];
    const auto& dofs_m = space.cell_dofs[rec.minus_triangle];

    double edge_sum = 0.0;
    for (size_t q = 0; q < erule.points.size(); ++q) {
      const Vec2 x = a + erule.points[q] * (b - a);
      const BasisEval bp = space.ref.eval(map_p.to_reference(x));
      const BasisEval bm = space.ref.eval(map_m.to_reference(x));
      Vec2 gp = Vec2::Zero(), gm = Vec2::Zero();
      for (int l = 0; l < nloc; ++l) {
        gp += coef[dofs_p[l]] * bp.grads[l];
        gm += coef[dofs_m[l]] * bm.grads[l];
      }
      const double jump = (map_p.JinvT * gp - map_m.JinvT * gm).dot(rec.normal);
      edge_sum += erule.weights[q] * rec.length * std::pow(std::abs(jump), p);
    }
    sum_jump += std::pow(rec.length, 1.0 - p) * edge_sum;
  }

  rep.err_lp = std::pow(sum_lp, 1.0 / p);
  rep.err_w1p = std::pow(sum_w1p, 1.0 / p);
  rep.err_hess = std::pow(sum_hess, 1.0 / p);
  rep.err_jump = std::pow(sum_jump, 1.0 / p);
  rep.err_w2ph = rep.err_hess + rep.err_jump;
  return rep;
}

ErrorReport fe_norms(const Space& space, const Vector& coef, double p,
                     const AssemblyOptions& opts) {
  return error_norms(space, coef, ExactFields::zero(), p, opts);
}

std::vector<std::optional<double>> eoc(const std::vector<double>& errors,
                                       const std::vector<double>& hs) {
  if (errors.size() != hs.size())
    throw std::invalid_argument("eoc: errors and mesh sizes differ in length");
  std::vector<std::optional<double>> orders(errors.size());
  for (size_t i = 1; i < errors.size(); ++i) {
    if (errors[i - 1] <= 0.0 || errors[i] <= 0.0) continue;
    const double dh = std::log(hs[i - 1] / hs[i]);
    if (!(dh != 0.0) || !std::isfinite(dh)) continue;
    orders[i] = std::log(errors[i - 1] / errors[i]) / dh;
  }
  return orders;
}

double discrete_lph_norm(const Space& space, const ScalarField& w, double p,
                         const AssemblyOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("discrete_lph_norm: p must be finite and > 1");

  const Vector r = assemble_rhs(space, w, opts);
  const SparseMat M = mass_matrix(space, opts.volume_degree(space.degree));
  Vector z;
  SolveOptions sopts;
  sopts.tol = 1e-12;
  const SolveReport rep = solve_sparse(M, r, z, sopts);
  if (!rep.converged)
    throw Error("discrete_lph_norm: mass solve did not reach the requested residual");

  const double rz = r.dot(z);
  if (rz <= 0.0) return 0.0;
  if (p == 2.0) return std::sqrt(rz);

  // Lower bound of the supremum: test with the L^2 Riesz representative z_h.
  const double pprime = p / (p - 1.0);
  ErrorReport zn = fe_norms(space, z, pprime, opts);
  if (zn.err_lp <= 0.0) return 0.0;
  return rz / zn.err_lp;
}

} // namespace ndform
