#pragma once

#include <string>
#include <vector>

#include "gcf/geometry.hpp"

namespace gcf {

struct SvgPath {
    std::vector<Vec2> points;
    std::string color;  // SVG color keyword or #rrggbb
};

/// Render polylines into a standalone SVG document (Y axis flipped so the
/// plot matches bed coordinates). Output is deterministic: identical input
/// produces identical bytes.
std::string render_svg(const std::vector<SvgPath>& paths, double width_px = 800.0,
                       double margin_px = 24.0);

void write_svg_file(const std::vector<SvgPath>& paths, const std::string& path,
                    double width_px = 800.0, double margin_px = 24.0);

}  // namespace gcf
