#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ndform/driver.hpp"
#include "ndform/output.hpp"

namespace {

int emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  ndform::write_atomic(out_path, payload);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  ndform::configure_threading();

  CLI::App app{"C0 finite element solver for elliptic equations in non-divergence form"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Convergence sweep over a mesh sequence");
  ndform::RunConfig cfg;
  std::string method = "c0dg", solver = "direct", format = "csv", out_path;
  run->add_option("--test", cfg.problem, "Problem id")
      ->check(CLI::IsMember(ndform::problem_ids()));
  run->add_option("--degree", cfg.degree, "Polynomial degree 1..4")
      ->check(CLI::Range(1, 4));
  run->add_option("--levels", cfg.levels, "Mesh subdivisions, e.g. 8,16,32,64")
      ->delimiter(',');
  run->add_option("--p", cfg.p, "Lebesgue exponent for the error norms");
  run->add_option("--method", method, "Discretization variant")
      ->check(CLI::IsMember({"c0dg", "divform"}));
  run->add_option("--solver", solver, "Linear solver")
      ->check(CLI::IsMember({"direct", "iterative"}));
  run->add_option("--tol", cfg.tol, "Iterative solver tolerance");
  run->add_option("--quad-volume", cfg.quad.quad_volume, "Override volume quadrature degree");
  run->add_option("--quad-edge", cfg.quad.quad_edge, "Override edge quadrature degree");
  run->add_option("--out", out_path, "Output path (stdout when omitted)");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // infsup
  auto* infsup = app.add_subcommand("infsup", "Discrete inf-sup stability probe");
  std::string is_test = "test1", is_out, is_format = "csv";
  int is_degree = 2;
  std::vector<int> is_levels = {4, 8, 16};
  infsup->add_option("--test", is_test, "Problem id")
      ->check(CLI::IsMember(ndform::problem_ids()));
  infsup->add_option("--degree", is_degree, "Polynomial degree 1..4")
      ->check(CLI::Range(1, 4));
  infsup->add_option("--levels", is_levels, "Mesh subdivisions")->delimiter(',');
  infsup->add_option("--out", is_out, "Output path (stdout when omitted)");
  infsup->add_option("--format", is_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // mesh-info
  auto* mesh_info = app.add_subcommand("mesh-info", "Structured mesh statistics");
  std::vector<double> domain = {0.0, 1.0, 0.0, 1.0};
  int mi_n = 1;
  mesh_info->add_option("--domain", domain, "x0,x1,y0,y1")
      ->delimiter(',')
      ->expected(4);
  mesh_info->add_option("--n", mi_n, "Subdivisions per side")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      cfg.method = method == "c0dg" ? ndform::MethodVariant::c0dg
                                    : ndform::MethodVariant::divform;
      cfg.solver = solver == "direct" ? ndform::SolverMethod::direct
                                      : ndform::SolverMethod::iterative;
      const ndform::ConvergenceTable table = ndform::run_convergence(cfg);
      emit(format == "csv" ? ndform::convergence_csv(table)
                           : ndform::convergence_json(table).dump(2) + "\n",
           out_path);
      for (const auto& f : table.failures) std::cerr << "failure: " << f << "\n";
      return table.failures.empty() ? 0 : 1;
    }

    if (infsup->parsed()) {
      if (is_degree < 2)
        std::cerr << "warning: the stability theory assumes degree >= 2; "
                     "degree 1 values are reported as computed\n";
      const ndform::StabilityReport report =
          ndform::run_infsup(is_test, is_degree, is_levels);
      emit(is_format == "csv" ? ndform::stability_csv(report)
                              : ndform::stability_json(report).dump(2) + "\n",
           is_out);
      return 0;
    }

    const ndform::Rect rect{domain[0], domain[1], domain[2], domain[3]};
    const ndform::Mesh mesh = ndform::build_rect_mesh(rect, mi_n);
    std::cout << ndform::mesh_info_text(ndform::mesh_stats(mesh, mi_n));
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
