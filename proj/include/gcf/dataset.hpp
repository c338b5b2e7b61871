#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcf/gcode.hpp"
#include "gcf/postprocess.hpp"

namespace gcf {

enum class ShapeKind { polygon_prism, star_prism, asymmetric_L };
enum class InfillKind { none, concentric };

/// Synthetic test object. `sides` is the polygon side count for
/// polygon_prism and the spike count for star_prism (asymmetric_L ignores
/// it). The outline is resampled to points_per_layer - 1 equal arc segments
/// and closed, so a 4-sided prism with points_per_layer = 5 is exactly a
/// closed square. The default of 22 (21 segments) deliberately avoids
/// sampling the outline symmetrically: it keeps per-layer bounding polygons
/// orientation-unambiguous the way real printed parts are.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::polygon_prism;
    std::size_t sides = 4;
    std::size_t num_layers = 1;
    double footprint_size = 20.0;  // circumscribed diameter (bounding box for the L)
    InfillKind infill = InfillKind::concentric;
    std::size_t points_per_layer = 22;
};

enum class VariantKind { R, T, RT };

/// Variant-generation parameters. Defaults reproduce the evaluation grids:
/// R: 36 rotations at 5..180 degrees; T: the 36 lattice points of a
/// 4 mm-spaced grid bounded by +/-10 mm; RT: 8 translation points (the four
/// farthest corners and the four nearest off-center points) x 36 rotations
/// = 288 variants.
struct VariantSpec {
    VariantKind variant = VariantKind::R;
    double rotation_step_deg = 5.0;
    double rotation_max_deg = 180.0;
    double grid_spacing = 4.0;
    double grid_bound = 10.0;
    std::size_t rt_translation_points = 8;
};

struct GeneratedVariant {
    std::string label;
    double theta_deg = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    GcodeProgram program;
};

/// Concentric infill ring pitch, mm (one nozzle diameter).
constexpr double kInfillRingPitch = 0.4;
/// Layer pitch of generated objects, mm.
constexpr double kShapeLayerPitch = 0.3;

/// Deterministically generate a printable synthetic object centered on the
/// bed. Layers sit at z = 0.3 * k. Concentric infill adds rings shrunk
/// toward the centroid, one ring per 0.4 mm of remaining inradius. The seed
/// fixes the object's orientation on the plate.
GcodeProgram gen_shape(const ShapeSpec& spec, std::uint64_t seed);

/// Rotated / translated / rotated-and-translated copies of a program, built
/// with the G-code manipulator (rotation first, then translation).
std::vector<GeneratedVariant> gen_variants(const GcodeProgram& program,
                                           const VariantSpec& vspec);

/// One prediction per movement instruction, with Gaussian noise on the
/// resolved coordinates. sigma <= 0 leaves a coordinate exact. Deterministic
/// for a given seed.
std::vector<TrajectoryPrediction> inject_noise(const GcodeProgram& program, double xy_sigma,
                                               double z_sigma, std::uint64_t seed);

}  // namespace gcf
