#pragma once

#include <string>
#include <vector>

#include "airoas/harness/stats.hpp"

namespace airoas::harness {

/// Renders ablation curves (mean return vs particle count per solver, with
/// SEM error bars) as a standalone SVG document.
std::string render_ablation_svg(const std::vector<SummaryRow>& rows);

void write_ablation_svg(const std::vector<SummaryRow>& rows, const std::string& path);

}  // namespace airoas::harness
