#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ndform/driver.hpp"
#include "ndform/mesh.hpp"
#include "ndform/stability.hpp"

namespace ndform {

/// Fixed plot-ready schema; doubles at full precision, rate cells empty on the
/// first row and wherever the order is undefined:
/// level,n,h,ndof,err_lp,err_w1p,err_hess,err_jump,err_w2ph,rate_lp,rate_w1p,rate_hess,rate_w2ph
std::string convergence_csv(const ConvergenceTable& table);

/// Full record: schema version, config echo, rows with solver diagnostics,
/// notes/failures, timing. Undefined rates are null so the document
/// round-trips exactly through any JSON parser.
nlohmann::json convergence_json(const ConvergenceTable& table);

/// Schema: level,n,h,ndof_free,sigma_min
std::string stability_csv(const StabilityReport& report);
nlohmann::json stability_json(const StabilityReport& report);

std::string mesh_info_text(const MeshStats& stats);

/// Writes via a temp file in the same directory plus an atomic rename, so a
/// crash never leaves a partial file at the target path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace ndform
