#pragma once

#include <string>

#include "hll/dimension.hpp"
#include "hll/level.hpp"

namespace hll {

// Standalone SVG plots with deterministic bytes for identical inputs.
// DimEstimate: log-log scatter with the fitted line and a slope label.
// LevelProfile: r-vs-slope step plot.
std::string render_plot(const DimEstimate& est);
std::string render_plot(const LevelProfile& profile);

void emit_plot(const DimEstimate& est, const std::string& path);
void emit_plot(const LevelProfile& profile, const std::string& path);

}  // namespace hll
