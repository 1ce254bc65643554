#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "dsg/knots.hpp"
#include "dsg/theta.hpp"

namespace dsg {

struct ReportOptions {
    ThetaCaps caps;
    bool ribbon_flag = false;  // --ribbon; or'ed with the DSL assertion
    bool verbose = false;      // adds the per-pair theta_1 interval table
    std::optional<std::filesystem::path> cache_dir;
};

/// Assembles the full bound report. Key order is fixed; every rational is a
/// reduced "num/den" string; potentially large integers are decimal strings.
nlohmann::ordered_json run_bound(const KnotSpec& spec, const ReportOptions& options);

/// 0 complete, 2 incomplete (caps hit); input errors exit 1 before a report exists.
int report_exit_code(const nlohmann::ordered_json& report);

}  // namespace dsg
