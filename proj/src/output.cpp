#include "ndform/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ndform {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

nlohmann::json json_rate(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json config_json(const RunConfig& cfg) {
  return {{"test", cfg.problem},
          {"degree", cfg.degree},
          {"levels", cfg.levels},
          {"p", cfg.p},
          {"method", to_string(cfg.method)},
          {"solver", to_string(cfg.solver)},
          {"tol", cfg.tol},
          {"quad_volume_degree", cfg.quad.volume_degree(cfg.degree)},
          {"quad_edge_degree", cfg.quad.edge_degree(cfg.degree)}};
}

} // namespace

std::string convergence_csv(const ConvergenceTable& table) {
  std::ostringstream out;
  out << "level,n,h,ndof,err_lp,err_w1p,err_hess,err_jump,err_w2ph,"
         "rate_lp,rate_w1p,rate_hess,rate_w2ph\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const LevelResult& r = table.rows[i];
    out << r.level << ',' << r.n << ',' << fmt(r.h) << ',' << r.ndof << ','
        << fmt(r.errors.err_lp) << ',' << fmt(r.errors.err_w1p) << ','
        << fmt(r.errors.err_hess) << ',' << fmt(r.errors.err_jump) << ','
        << fmt(r.errors.err_w2ph) << ',' << fmt(table.rate_lp[i]) << ','
        << fmt(table.rate_w1p[i]) << ',' << fmt(table.rate_hess[i]) << ','
        << fmt(table.rate_w2ph[i]) << '\n';
  }
  return out.str();
}

nlohmann::json convergence_json(const ConvergenceTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const LevelResult& r = table.rows[i];
    rows.push_back({{"level", r.level},
                    {"n", r.n},
                    {"h", r.h},
                    {"ndof", r.ndof},
                    {"err_lp", r.errors.err_lp},
                    {"err_w1p", r.errors.err_w1p},
                    {"err_hess", r.errors.err_hess},
                    {"err_jump", r.errors.err_jump},
                    {"err_w2ph", r.errors.err_w2ph},
                    {"rate_lp", json_rate(table.rate_lp[i])},
                    {"rate_w1p", json_rate(table.rate_w1p[i])},
                    {"rate_hess", json_rate(table.rate_hess[i])},
                    {"rate_w2ph", json_rate(table.rate_w2ph[i])},
                    {"solver",
                     {{"converged", r.solve.converged},
                      {"iterations", r.solve.iterations},
                      {"residual_rel", r.solve.residual_rel}}},
                    {"seconds", r.seconds}});
  }
  return {{"schema_version", 1},
          {"kind", "convergence"},
          {"config", config_json(table.config)},
          {"rows", rows},
          {"notes", table.notes},
          {"failures", table.failures},
          {"timing_seconds", table.elapsed_seconds}};
}

std::string stability_csv(const StabilityReport& report) {
  std::ostringstream out;
  out << "level,n,h,ndof_free,sigma_min\n";
  for (const auto& r : report.rows)
    out << r.level << ',' << r.n << ',' << fmt(r.h) << ',' << r.ndof_free << ','
        << fmt(r.sigma_min) << '\n';
  return out.str();
}

nlohmann::json stability_json(const StabilityReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"level", r.level},
                    {"n", r.n},
                    {"h", r.h},
                    {"ndof_free", r.ndof_free},
                    {"sigma_min", r.sigma_min}});
  return {{"schema_version", 1},
          {"kind", "infsup"},
          {"config", {{"test", report.problem}, {"degree", report.degree}}},
          {"rows", rows},
          {"timing_seconds", report.elapsed_seconds}};
}

std::string mesh_info_text(const MeshStats& stats) {
  std::ostringstream out;
  out << "n " << stats.n << "\n"
      << "vertices " << stats.vertices << "\n"
      << "triangles " << stats.triangles << "\n"
      << "interior_edges " << stats.interior_edges << "\n"
      << "boundary_edges " << stats.boundary_edges << "\n"
      << "h_max " << fmt(stats.h_max) << "\n"
      << "h_min " << fmt(stats.h_min) << "\n";
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("write_atomic: cannot open " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("write_atomic: write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("write_atomic: rename to " + path.string() + " failed: " + ec.message());
  }
}

} // namespace ndform
