#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ndform/driver.hpp"
#include "ndform/output.hpp"
#include "ndform/stability.hpp"

namespace py = pybind11;
using namespace ndform;

namespace {

RunConfig make_config(const std::string& test, int degree, const std::vector<int>& levels,
                      double p, const std::string& method, const std::string& solver,
                      double tol) {
  RunConfig cfg;
  cfg.problem = test;
  cfg.degree = degree;
  cfg.levels = levels;
  cfg.p = p;
  if (method == "c0dg") cfg.method = MethodVariant::c0dg;
  else if (method == "divform") cfg.method = MethodVariant::divform;
  else throw std::invalid_argument("method must be c0dg or divform");
  if (solver == "direct") cfg.solver = SolverMethod::direct;
  else if (solver == "iterative") cfg.solver = SolverMethod::iterative;
  else throw std::invalid_argument("solver must be direct or iterative");
  cfg.tol = tol;
  return cfg;
}

std::string run_convergence_json_str(const std::string& test, int degree,
                                     const std::vector<int>& levels, double p,
                                     const std::string& method, const std::string& solver,
                                     double tol) {
  return convergence_json(run_convergence(
             make_config(test, degree, levels, p, method, solver, tol)))
      .dump();
}

std::string infsup_json_str(const std::string& test, int degree,
                            const std::vector<int>& levels) {
  return stability_json(run_infsup(test, degree, levels)).dump();
}

py::dict mesh_stats_dict(std::array<double, 4> domain, int n) {
  const Mesh mesh = build_rect_mesh(Rect{domain[0], domain[1], domain[2], domain[3]}, n);
  const MeshStats s = mesh_stats(mesh, n);
  py::dict d;
  d["n"] = s.n;
  d["vertices"] = s.vertices;
  d["triangles"] = s.triangles;
  d["interior_edges"] = s.interior_edges;
  d["boundary_edges"] = s.boundary_edges;
  d["h_max"] = s.h_max;
  d["h_min"] = s.h_min;
  return d;
}

py::dict solve_errors_dict(const std::string& test, int degree, int n, double p) {
  RunConfig cfg = make_config(test, degree, {n}, p, "c0dg", "direct", 1e-10);
  const SolveResult res = solve_once(cfg, n);
  const ProblemSpec spec = problem(test);
  const ErrorReport rep =
      error_norms(res.space, res.coef, {spec.u, spec.grad_u, spec.hess_u}, p);
  py::dict d;
  d["n"] = n;
  d["h"] = rep.h;
  d["ndof"] = rep.ndof;
  d["err_lp"] = rep.err_lp;
  d["err_w1p"] = rep.err_w1p;
  d["err_hess"] = rep.err_hess;
  d["err_jump"] = rep.err_jump;
  d["err_w2ph"] = rep.err_w2ph;
  d["residual_rel"] = res.report.residual_rel;
  d["converged"] = res.report.converged;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C0 finite element solver for elliptic equations in non-divergence form";

  m.def("problem_ids", [] { return problem_ids(); }, "Registered problem ids");
  m.def("mesh_stats", &mesh_stats_dict, py::arg("domain"), py::arg("n"),
        "Counts and mesh sizes of the structured mesh");
  m.def("run_convergence_json", &run_convergence_json_str, py::arg("test"),
        py::arg("degree") = 2, py::arg("levels") = std::vector<int>{8, 16, 32, 64},
        py::arg("p") = 2.0, py::arg("method") = "c0dg", py::arg("solver") = "direct",
        py::arg("tol") = 1e-10, "Convergence sweep; returns the JSON record as a string");
  m.def("infsup_json", &infsup_json_str, py::arg("test"), py::arg("degree") = 2,
        py::arg("levels") = std::vector<int>{4, 8, 16},
        "Inf-sup probe; returns the JSON record as a string");
  m.def("solve_errors", &solve_errors_dict, py::arg("test"), py::arg("degree") = 2,
        py::arg("n") = 8, py::arg("p") = 2.0,
        "Solve one level and return its error norms");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
