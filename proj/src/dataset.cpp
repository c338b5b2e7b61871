#include "gcf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "gcf/errors.hpp"
#include "gcf/manipulator.hpp"

namespace gcf {

namespace {

constexpr Vec2 kBedCenter{125.0, 125.0};
constexpr double kBedSize = 250.0;

std::vector<Vec2> regular_polygon_outline(std::size_t sides, double circumradius) {
    std::vector<Vec2> outline;
    outline.reserve(sides);
    for (std::size_t i = 0; i < sides; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(sides);
        outline.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    }
    return outline;
}

std::vector<Vec2> star_outline(std::size_t spikes, double outer_radius) {
    const double inner_radius = 0.42 * outer_radius;
    std::vector<Vec2> outline;
    outline.reserve(2 * spikes);
    for (std::size_t i = 0; i < 2 * spikes; ++i) {
        const double r = i % 2 == 0 ? outer_radius : inner_radius;
        const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(spikes);
        outline.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return outline;
}

std::vector<Vec2> l_outline(double size) {
    // An L footprint filling a size x size box; the limb widths keep the
    // centroid inside the material.
    const double s = size;
    return {{0.0, 0.0},      {s, 0.0},        {s, 0.42 * s},
            {0.45 * s, 0.42 * s}, {0.45 * s, s}, {0.0, s}};
}

Vec2 outline_centroid(const std::vector<Vec2>& outline) {
    Polygon p{outline};
    const double area = std::abs(polygon_area(p));
    if (area > 1e-12) {
        // polygon_centroid handles CW input too (signed weights cancel).
        double twice = 0.0;
        double cx = 0.0, cy = 0.0;
        for (std::size_t i = 0, n = outline.size(); i < n; ++i) {
            const Vec2& a = outline[i];
            const Vec2& b = outline[(i + 1) % n];
            const double w = a.x * b.y - b.x * a.y;
            twice += w;
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        return {cx / (3.0 * twice), cy / (3.0 * twice)};
    }
    Vec2 mean{0.0, 0.0};
    for (Vec2 q : outline) mean = mean + q;
    return {mean.x / static_cast<double>(outline.size()),
            mean.y / static_cast<double>(outline.size())};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    if (len2 < 1e-18)
        return distance(p, a);
    const double t =
        std::clamp(((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2, 0.0, 1.0);
    return distance(p, a + t * (b - a));
}

// Minimum distance from the centroid to any outline edge: how much inward
// offset the footprint can absorb.
double outline_inradius(const std::vector<Vec2>& outline, Vec2 centroid) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = outline.size(); i < n; ++i)
        best = std::min(best, point_segment_distance(centroid, outline[i],
                                                     outline[(i + 1) % n]));
    return best;
}

// Close the outline and resample it into `segments` equal arc steps; the
// last point repeats the first.
std::vector<Vec2> resample_closed(const std::vector<Vec2>& outline, std::size_t segments) {
    std::vector<Vec2> closed = outline;
    closed.push_back(outline.front());
    return resample_polyline(closed, segments + 1);
}

}  // namespace

GcodeProgram gen_shape(const ShapeSpec& spec, std::uint64_t seed) {
    if (spec.num_layers == 0)
        throw DataError("gen_shape: num_layers must be >= 1");
    if (spec.points_per_layer < 4)
        throw DataError("gen_shape: points_per_layer must be >= 4");
    if (spec.sides < 3)
        throw DataError("gen_shape: sides must be >= 3");
    if (spec.footprint_size <= 0.0 || spec.footprint_size > kBedSize)
        throw DataError("gen_shape: footprint does not fit the build area");

    std::vector<Vec2> outline;
    switch (spec.kind) {
        case ShapeKind::polygon_prism:
            outline = regular_polygon_outline(spec.sides, spec.footprint_size / 2.0);
            break;
        case ShapeKind::star_prism:
            outline = star_outline(spec.sides, spec.footprint_size / 2.0);
            break;
        case ShapeKind::asymmetric_L:
            outline = l_outline(spec.footprint_size);
            break;
    }

    // Seeded orientation, then recenter on the bed.
    const Vec2 centroid = outline_centroid(outline);
    const double orientation = std::fmod(static_cast<double>(seed) * 137.508, 360.0);
    outline = rotate_points(std::move(outline), centroid, orientation);
    outline = translate_points(std::move(outline), kBedCenter.x - centroid.x,
                               kBedCenter.y - centroid.y);

    const std::vector<Vec2> perimeter = resample_closed(outline, spec.points_per_layer - 1);

    // Concentric rings: copies of the perimeter shrunk toward the centroid so
    // the remaining inradius drops by one pitch per ring.
    std::vector<std::vector<Vec2>> rings;
    if (spec.infill == InfillKind::concentric) {
        const double inradius = outline_inradius(outline, kBedCenter);
        for (std::size_t k = 1;; ++k) {
            const double remaining = inradius - kInfillRingPitch * static_cast<double>(k);
            if (remaining <= kGeomEps)
                break;
            const double scale = remaining / inradius;
            std::vector<Vec2> ring;
            ring.reserve(perimeter.size());
            for (Vec2 p : perimeter) ring.push_back(kBedCenter + scale * (p - kBedCenter));
            rings.push_back(std::move(ring));
        }
    }

    const PrinterProfile profile;
    GcodeProgram program;
    {
        std::ostringstream name;
        name << "<gen:" << static_cast<int>(spec.kind) << ":" << seed << ">";
        program.source_name = name.str();
    }

    double e_cumulative = 0.0;
    bool any_g0 = false;
    bool any_g1 = false;
    Vec2 position{0.0, 0.0};

    auto emit_g1 = [&](Vec2 p, bool extrude, std::optional<double> z) {
        Instruction inst;
        inst.command = Command::G1;
        inst.x = p.x;
        inst.y = p.y;
        if (z)
            inst.z = *z;
        if (extrude) {
            e_cumulative += compute_extrusion(profile, distance(position, p));
            inst.e = e_cumulative;
        }
        if (!any_g1) {
            inst.f = profile.feed_g1;
            any_g1 = true;
        }
        program.instructions.push_back(std::move(inst));
        position = p;
    };
    auto emit_g0 = [&](Vec2 p) {
        Instruction inst;
        inst.command = Command::G0;
        inst.x = p.x;
        inst.y = p.y;
        if (!any_g0) {
            inst.f = profile.feed_g0;
            any_g0 = true;
        }
        program.instructions.push_back(std::move(inst));
        position = p;
    };

    for (std::size_t layer = 1; layer <= spec.num_layers; ++layer) {
        const double z = kShapeLayerPitch * static_cast<double>(layer);
        // Move into position to start extruding; this carries the layer change.
        emit_g1(perimeter.front(), false, z);
        for (std::size_t i = 1; i < perimeter.size(); ++i)
            emit_g1(perimeter[i], true, std::nullopt);
        for (const auto& ring : rings) {
            emit_g0(ring.front());
            for (std::size_t i = 1; i < ring.size(); ++i)
                emit_g1(ring[i], true, std::nullopt);
        }
    }
    return program;
}

std::vector<GeneratedVariant> gen_variants(const GcodeProgram& program,
                                           const VariantSpec& vspec) {
    auto label_for = [](const char* kind, double theta, double dx, double dy) {
        std::ostringstream out;
        out << kind << "_x" << format_number(dx) << "_y" << format_number(dy) << "_r"
            << format_number(theta);
        return out.str();
    };

    std::vector<double> angles;
    const int steps =
        static_cast<int>(std::llround(vspec.rotation_max_deg / vspec.rotation_step_deg));
    for (int k = 1; k <= steps; ++k)
        angles.push_back(vspec.rotation_step_deg * static_cast<double>(k));

    std::vector<GeneratedVariant> variants;
    switch (vspec.variant) {
        case VariantKind::R: {
            for (double theta : angles) {
                GeneratedVariant v;
                v.label = label_for("R", theta, 0.0, 0.0);
                v.theta_deg = theta;
                v.program = rotate_gcode(program, theta);
                variants.push_back(std::move(v));
            }
            break;
        }
        case VariantKind::T: {
            std::vector<double> offsets;
            for (double t = -vspec.grid_bound; t <= vspec.grid_bound + kGeomEps;
                 t += vspec.grid_spacing)
                offsets.push_back(t);
            for (double dx : offsets) {
                for (double dy : offsets) {
                    GeneratedVariant v;
                    v.label = label_for("T", 0.0, dx, dy);
                    v.dx = dx;
                    v.dy = dy;
                    v.program = translate_gcode(program, dx, dy);
                    variants.push_back(std::move(v));
                }
            }
            break;
        }
        case VariantKind::RT: {
            if (vspec.rt_translation_points != 8)
                throw DataError("gen_variants: RT uses exactly 8 translation points");
            const double far = vspec.grid_bound;
            const double near = vspec.grid_spacing / 2.0;
            const Vec2 points[8] = {{far, far},   {far, -far},   {-far, far},   {-far, -far},
                                    {near, near}, {near, -near}, {-near, near}, {-near, -near}};
            for (const Vec2& t : points) {
                for (double theta : angles) {
                    GeneratedVariant v;
                    v.label = label_for("RT", theta, t.x, t.y);
                    v.theta_deg = theta;
                    v.dx = t.x;
                    v.dy = t.y;
                    v.program = translate_gcode(rotate_gcode(program, theta), t.x, t.y);
                    variants.push_back(std::move(v));
                }
            }
            break;
        }
    }
    return variants;
}

std::vector<TrajectoryPrediction> inject_noise(const GcodeProgram& program, double xy_sigma,
                                               double z_sigma, std::uint64_t seed) {
    if (extract_skeleton(program).empty())
        throw DataError("inject_noise: program has no print moves");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto noise = [&](double sigma) { return sigma > 0.0 ? sigma * gauss(rng) : 0.0; };

    std::vector<TrajectoryPrediction> out;
    double x = 0.0, y = 0.0, z = 0.0;
    for (const Instruction& inst : program.instructions) {
        if (!inst.is_movement())
            continue;
        if (inst.x) x = *inst.x;
        if (inst.y) y = *inst.y;
        if (inst.z) z = *inst.z;
        TrajectoryPrediction p;
        p.command_class = inst.command == Command::G0 ? MoveClass::G0 : MoveClass::G1;
        p.x = x + noise(xy_sigma);
        p.y = y + noise(xy_sigma);
        p.z_raw = z + noise(z_sigma);
        out.push_back(p);
    }
    return out;
}

}  // namespace gcf
