#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcf/geometry.hpp"

namespace gcf {

enum class Command { G0, G1, Other };

/// One G-code line. G0/G1 lines carry decoded parameters; anything else is
/// kept verbatim in `raw` and re-emitted untouched.
struct Instruction {
    Command command = Command::Other;
    std::optional<double> x;
    std::optional<double> y;
    std::optional<double> z;
    std::optional<double> e;  // extruder position / amount, mm of filament
    std::optional<double> f;  // feed rate, mm/min
    std::string raw;          // original source line text

    bool is_movement() const {
        return command != Command::Other && (x.has_value() || y.has_value() || z.has_value());
    }
};

struct GcodeProgram {
    std::vector<Instruction> instructions;
    std::string source_name;

    /// Number of G0/G1 instructions that move an axis.
    std::size_t movement_count() const;
};

/// One printed layer: the ordered XY trajectory at a fixed Z.
struct Layer {
    double z = 0.0;
    std::vector<Vec2> points;
};

/// The nozzle's print trajectory: ordered layers of ordered 2D points.
struct Skeleton {
    std::vector<Layer> layers;

    bool empty() const { return layers.empty(); }
    std::size_t total_points() const;
    std::vector<Vec2> all_points() const;
};

/// Shortest fixed-notation decimal that parses back to exactly `value`.
std::string format_number(double value);

/// Parse G-code text. Lines are split on LF (a trailing CR is stripped),
/// `;` comments removed, blank lines skipped. G0/G1 lines with X/Y/Z/E/F
/// parameters are decoded; any other line is preserved as Command::Other.
/// A malformed numeric parameter on a G0/G1 line raises ParseError with the
/// offending line number. Empty input yields an empty program.
GcodeProgram parse_program(const std::string& text, std::string source_name = "<string>");
GcodeProgram parse_gcode_file(const std::string& path);

/// One line per instruction, LF separated. G0/G1 lines are emitted in
/// canonical form (params in X Y Z E F order, shortest exact numbers);
/// other lines verbatim. parse_program(emit_program(p)) == p for G0/G1
/// content.
std::string emit_program(const GcodeProgram& program);
void write_gcode_file(const GcodeProgram& program, const std::string& path);

/// Reduce a program to its per-layer trajectory. G0 moves update the
/// tracked position (including Z) but contribute no points; every G1 that
/// moves an axis contributes one point at the tracked X/Y under the tracked
/// Z. A new layer opens whenever a point arrives at a Z different from the
/// current layer's; layers with no points never materialize. Untracked
/// coordinates default to 0 until first set.
Skeleton extract_skeleton(const GcodeProgram& program);

}  // namespace gcf
