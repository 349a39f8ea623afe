#pragma once

#include "ndform/linalg.hpp"
#include "ndform/norms.hpp"
#include "ndform/problems.hpp"

namespace ndform {

enum class MethodVariant { c0dg, divform };

std::string to_string(MethodVariant m);
std::string to_string(SolverMethod s);

/// One convergence run: which problem, degree, refinement levels and options.
/// Defaults reproduce the primary benchmark table for test1 at k = 2.
struct RunConfig {
  std::string problem = "test1";
  int degree = 2;
  std::vector<int> levels = {8, 16, 32, 64};
  double p = 2.0;
  MethodVariant method = MethodVariant::c0dg;
  SolverMethod solver = SolverMethod::direct;
  double tol = 1e-10;
  AssemblyOptions quad;
};

struct LevelResult {
  int level = 0;
  int n = 0;
  double h = 0.0;
  int ndof = 0;
  ErrorReport errors;
  SolveReport solve;
  double seconds = 0.0;
};

/// Completed levels with observed orders. Failed levels do not produce rows;
/// they are recorded in `failures` and the table is still emitted. `notes`
/// records non-failure adjustments (the k = 4 mesh cap).
struct ConvergenceTable {
  RunConfig config;
  std::vector<LevelResult> rows;
  std::vector<std::optional<double>> rate_lp, rate_w1p, rate_hess, rate_w2ph;
  std::vector<std::string> notes;
  std::vector<std::string> failures;
  double elapsed_seconds = 0.0;
};

struct SolveResult {
  Space space;
  Vector coef;
  SolveReport report;
  double seconds = 0.0;
};

/// Assembles and solves one level. Throws on hard numerical failure; an
/// iterative solve that stalls is returned with report.converged = false.
SolveResult solve_once(const RunConfig& cfg, int n);

/// Full mesh sweep with error norms and observed orders. Deterministic:
/// identical configs produce identical tables.
ConvergenceTable run_convergence(const RunConfig& cfg);

} // namespace ndform
