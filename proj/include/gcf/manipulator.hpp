#pragma once

#include "gcf/gcode.hpp"

namespace gcf {

/// Rotate every G0/G1 X/Y position by `deg` degrees CCW about a single
/// global pivot: the centroid of the convex hull of all skeleton points.
/// Z, E, F and instruction order are untouched, so segment lengths and the
/// infill pattern are preserved exactly. Instructions that carry X or Y end
/// up carrying both (the rotated position); Z-only moves inherit the rotated
/// position of their predecessor. Throws DataError on an empty skeleton.
GcodeProgram rotate_gcode(const GcodeProgram& program, double deg);

/// Shift every movement X/Y by (dx, dy); everything else untouched.
GcodeProgram translate_gcode(const GcodeProgram& program, double dx, double dy);

/// Number of movement instructions whose resolved position falls outside
/// the square build area [bed_min, bed_max]^2 (250 mm bed by default).
/// translate_gcode never fails on out-of-bed results; callers warn instead.
std::size_t count_out_of_bed(const GcodeProgram& program, double bed_min = 0.0,
                             double bed_max = 250.0);

}  // namespace gcf
