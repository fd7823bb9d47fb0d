// Line-chart SVG rendered from the CSV files the runner writes. Charts read only the
// CSV text, so they can be regenerated from saved outputs.

#pragma once

#include <string>

namespace ssmt::cli {

// Panel CSV -> chart of fdr_hat or tdr_hat against n, one curve per procedure with a
// +/- sd/10 band. The FDR chart adds the lower bound column and the nominal level.
std::string panel_chart_svg(const std::string& csv, const std::string& metric);

// Phase CSV -> log-log chart of the boundary rows; rows off the boundary are drawn as stars.
std::string phase_chart_svg(const std::string& csv);

}  // namespace ssmt::cli
