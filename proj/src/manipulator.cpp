#include "gcf/manipulator.hpp"

#include <cmath>
#include <numbers>

#include "gcf/errors.hpp"
#include "gcf/geometry.hpp"

namespace gcf {

GcodeProgram rotate_gcode(const GcodeProgram& program, double deg) {
    const Skeleton skeleton = extract_skeleton(program);
    if (skeleton.empty())
        throw DataError("rotate_gcode: program has no print moves (empty skeleton)");
    const Vec2 pivot = polygon_centroid(convex_hull(skeleton.all_points()));

    const double rad = deg * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);

    GcodeProgram out = program;
    double x = 0.0, y = 0.0;  // tracks positions in the source frame
    for (Instruction& inst : out.instructions) {
        if (inst.command == Command::Other)
            continue;
        if (!inst.x && !inst.y)
            continue;
        if (inst.x) x = *inst.x;
        if (inst.y) y = *inst.y;
        if (deg == 0.0) {
            inst.x = x;
            inst.y = y;
        } else {
            const double dx = x - pivot.x;
            const double dy = y - pivot.y;
            inst.x = pivot.x + c * dx - s * dy;
            inst.y = pivot.y + s * dx + c * dy;
        }
        inst.raw.clear();  // no longer the source text
    }
    return out;
}

GcodeProgram translate_gcode(const GcodeProgram& program, double dx, double dy) {
    GcodeProgram out = program;
    for (Instruction& inst : out.instructions) {
        if (inst.command == Command::Other)
            continue;
        if (inst.x) inst.x = *inst.x + dx;
        if (inst.y) inst.y = *inst.y + dy;
        if (inst.x || inst.y)
            inst.raw.clear();
    }
    return out;
}

std::size_t count_out_of_bed(const GcodeProgram& program, double bed_min, double bed_max) {
    std::size_t n = 0;
    double x = 0.0, y = 0.0;
    for (const Instruction& inst : program.instructions) {
        if (!inst.is_movement())
            continue;
        if (inst.x) x = *inst.x;
        if (inst.y) y = *inst.y;
        if (x < bed_min || x > bed_max || y < bed_min || y > bed_max)
            ++n;
    }
    return n;
}

}  // namespace gcf
