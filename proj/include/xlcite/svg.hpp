#pragma once

#include <filesystem>
#include <iosfwd>

#include "xlcite/usage.hpp"

namespace xlcite {

enum class HeatmapMode {
    absolute,  // intensity relative to the global maximum cell
    relative,  // row-normalized values
};

// Static grayscale heatmap: one rect per cell, darker means larger,
// row/column labels, numeric cell annotations when the matrix has at
// most 20 columns. Output bytes are deterministic for identical inputs.
void emit_heatmap_svg(const GeoMatrix& matrix, std::ostream& out, HeatmapMode mode);
void emit_heatmap_svg(const GeoMatrix& matrix, const std::filesystem::path& path,
                      HeatmapMode mode);

}  // namespace xlcite
