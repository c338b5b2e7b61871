#include "gcf/svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "gcf/errors.hpp"
#include "gcf/gcode.hpp"

namespace gcf {

std::string render_svg(const std::vector<SvgPath>& paths, double width_px, double margin_px) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const SvgPath& path : paths) {
        for (Vec2 p : path.points) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    if (min_x > max_x) {  // nothing to draw
        min_x = min_y = 0.0;
        max_x = max_y = 1.0;
    }
    const double span_x = std::max(max_x - min_x, 1e-6);
    const double span_y = std::max(max_y - min_y, 1e-6);
    const double scale = (width_px - 2.0 * margin_px) / span_x;
    const double height_px = span_y * scale + 2.0 * margin_px;

    auto to_px = [&](Vec2 p) {
        return Vec2{margin_px + (p.x - min_x) * scale,
                    height_px - margin_px - (p.y - min_y) * scale};
    };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(width_px) +
           "\" height=\"" + format_number(height_px) + "\" viewBox=\"0 0 " +
           format_number(width_px) + " " + format_number(height_px) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const SvgPath& path : paths) {
        if (path.points.empty())
            continue;
        out += "<polyline fill=\"none\" stroke=\"" + path.color +
               "\" stroke-width=\"1.2\" points=\"";
        bool first = true;
        for (Vec2 p : path.points) {
            const Vec2 q = to_px(p);
            if (!first)
                out += ' ';
            first = false;
            out += format_number(q.x) + "," + format_number(q.y);
        }
        out += "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_svg_file(const std::vector<SvgPath>& paths, const std::string& path,
                    double width_px, double margin_px) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write SVG file: " + path);
    out << render_svg(paths, width_px, margin_px);
}

}  // namespace gcf
