#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "castlab/analysis.hpp"
#include "castlab/image.hpp"

namespace castlab {

// Self-contained SVG documents. Output bytes depend only on the inputs.

// 256 bars, heights in percent of total pixels, scaled to the tallest bin.
std::string histogram_svg(const Histogram& h, std::string_view title = "Histogram");

// One point per pair; both axes span grey levels 0..255. Throws
// Error(InvalidArgument) for an empty sample.
std::string scatter_svg(const CorrelationSample& s,
                        std::string_view title = "Adjacent pixel correlation");

void plot_histogram_svg(const Histogram& h, const std::filesystem::path& path,
                        std::string_view title = "Histogram");
void plot_scatter_svg(const CorrelationSample& s, const std::filesystem::path& path,
                      std::string_view title = "Adjacent pixel correlation");

}  // namespace castlab
