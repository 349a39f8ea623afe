#include "ndform/driver.hpp"

#include <chrono>

#include "ndform/assembly.hpp"

namespace ndform {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const RunConfig& cfg) {
  if (cfg.degree < 1 || cfg.degree > 4)
    throw std::invalid_argument("run config: degree must be in 1..4");
  if (cfg.levels.empty()) throw std::invalid_argument("run config: empty level list");
  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    if (cfg.levels[i] < 1) throw std::invalid_argument("run config: levels must be >= 1");
    if (i > 0 && cfg.levels[i] <= cfg.levels[i - 1])
      throw std::invalid_argument("run config: levels must be strictly increasing");
  }
  if (!(cfg.p > 1.0)) throw std::invalid_argument("run config: p must be > 1");
}

} // namespace

std::string to_string(MethodVariant m) {
  return m == MethodVariant::c0dg ? "c0dg" : "divform";
}

std::string to_string(SolverMethod s) {
  return s == SolverMethod::direct ? "direct" : "iterative";
}

SolveResult solve_once(const RunConfig& cfg, int n) {
  const ProblemSpec spec = problem(cfg.problem);
  const auto t0 = Clock::now();

  auto mesh = std::make_shared<const Mesh>(build_rect_mesh(spec.domain, n));
  SolveResult res{build_space(mesh, cfg.degree), Vector(), SolveReport{}, 0.0};

  SparseMat matrix = cfg.method == MethodVariant::c0dg
                         ? assemble_c0dg(res.space, spec.A, cfg.quad)
                         : assemble_divform(res.space, spec.A, cfg.quad);
  Vector rhs = assemble_rhs(res.space, spec.f, cfg.quad);
  LinearSystem sys = apply_dirichlet(std::move(matrix), std::move(rhs), res.space, spec.g);

  SolveOptions sopts;
  sopts.method = cfg.solver;
  sopts.tol = cfg.tol;
  res.report = solve_sparse(sys.matrix, sys.rhs, res.coef, sopts);
  res.seconds = seconds_since(t0);
  return res;
}

ConvergenceTable run_convergence(const RunConfig& cfg) {
  validate(cfg);
  const ProblemSpec spec = problem(cfg.problem);  // also rejects unknown ids early
  ConvergenceTable table;
  table.config = cfg;

  std::vector<int> levels = cfg.levels;
  if (cfg.degree == 4) {
    std::vector<int> kept;
    for (int n : levels) {
      if (n <= 32) kept.push_back(n);
      else
        table.notes.push_back("level n=" + std::to_string(n) +
                              " skipped: degree 4 runs are capped at n=32");
    }
    levels = kept;
  }

  const ExactFields exact{spec.u, spec.grad_u, spec.hess_u};
  const auto t0 = Clock::now();
  for (size_t i = 0; i < levels.size(); ++i) {
    const int n = levels[i];
    try {
      SolveResult res = solve_once(cfg, n);
      if (!res.report.converged)
        throw Error("solver did not converge (relative residual " +
                    std::to_string(res.report.residual_rel) + ")");
      LevelResult row;
      row.level = static_cast<int>(table.rows.size());
      row.n = n;
      row.h = res.space.mesh->h_max;
      row.ndof = res.space.dim;
      row.errors = error_norms(res.space, res.coef, exact, cfg.p, cfg.quad);
      row.solve = res.report;
      row.seconds = res.seconds;
      table.rows.push_back(std::move(row));
    } catch (const std::exception& err) {
      table.failures.push_back("level " + std::to_string(i) + " (n=" + std::to_string(n) +
                               "): " + err.what());
    }
  }
  table.elapsed_seconds = seconds_since(t0);

  std::vector<double> hs;
  auto rates_for = [&](auto pick) {
    std::vector<double> errs;
    for (const auto& row : table.rows) errs.push_back(pick(row.errors));
    return eoc(errs, hs);
  };
  for (const auto& row : table.rows) hs.push_back(row.h);
  table.rate_lp = rates_for([](const ErrorReport& e) { return e.err_lp; });
  table.rate_w1p = rates_for([](const ErrorReport& e) { return e.err_w1p; });
  table.rate_hess = rates_for([](const ErrorReport& e) { return e.err_hess; });
  table.rate_w2ph = rates_for([](const ErrorReport& e) { return e.err_w2ph; });
  return table;
}

} // namespace ndform
