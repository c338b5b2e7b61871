#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gcf/gcode.hpp"
#include "gcf/geometry.hpp"

namespace gcf {

/// Rigid transform chosen for one candidate layer: shift so the bounding
/// polygon centroids coincide, then the fused-area-minimizing rotation about
/// the common centroid.
struct AlignmentResult {
    Vec2 translation;            // applied to the candidate points
    int rotation_deg = 0;        // integer degrees in [0, 359]
    double fused_area = 0.0;     // union of the two bounding polygons
    double gt_area = 0.0;        // ground-truth bounding polygon area
    double objective = 0.0;      // |fused_area - gt_area|
    bool translation_only = false;  // degenerate hull: rotation search skipped
};

struct LayerScore {
    std::size_t layer_index = 0;
    double gt_z = 0.0;
    double dissimilarity_pct = 0.0;  // in [0, 100]
    AlignmentResult alignment;
    double raw_dtw = 0.0;  // mm
    bool paired = true;    // false for layers present on only one side
};

struct ComparisonReport {
    std::vector<LayerScore> per_layer;
    double aggregate_dissimilarity_pct = 0.0;
    double aggregate_similarity_pct = 100.0;
    double height_penalty_pct = 0.0;
    std::size_t gt_layer_count = 0;
    std::size_t cand_layer_count = 0;
    std::size_t gt_instruction_count = 0;    // movement instructions
    std::size_t cand_instruction_count = 0;  // movement instructions
    double instruction_overhead_ratio = 0.0;
};

struct CompareOptions {
    bool skip_brim = false;     // drop the first (adhesion) layer on both sides
    bool global_align = false;  // reuse layer 0's transform for every layer
    unsigned jobs = 1;          // per-layer scoring threads
};

/// Search integer rotations (0..359, 0 standing for the full turn) of `cand`
/// about the ground-truth centroid and keep the angle whose fused-polygon
/// area is closest to the ground-truth area; exact ties go to the smallest
/// angle. Both polygons must be non-degenerate with coincident centroids.
AlignmentResult best_rotation(const Polygon& gt_poly, const Polygon& cand_poly);

/// Align a candidate layer to a ground-truth layer: translate so the hull
/// centroids coincide, then apply best_rotation. The enclosed trajectory
/// points receive the same rigid motion as the polygon. Degenerate hulls
/// fall back to translation only.
std::pair<AlignmentResult, std::vector<Vec2>> align_layer(const Layer& gt, const Layer& cand);

/// Minimal DTW cost (Euclidean local cost, match/insert/delete steps, no
/// warping window) over all contiguous subsequences of the longer sequence
/// matched against the shorter one.
double subsequence_dtw(const std::vector<Vec2>& reference, const std::vector<Vec2>& query);

/// Align, run subsequence DTW, and normalize to a percentage:
/// 100 * raw / (N_gt * D_gt) clipped to [0, 100], with N_gt the ground-truth
/// point count and D_gt its bounding-box diagonal.
LayerScore layer_dissimilarity(const Layer& gt, const Layer& cand);

/// Layer-by-layer comparison. Layers pair by index; each unpaired layer
/// scores 100. The aggregate is the mean over all paired and unpaired layers
/// plus a height penalty of 100 * |n_gt - n_cand| / max(n_gt, n_cand),
/// clipped to [0, 100]. Throws DataError if either skeleton is empty.
ComparisonReport compare(const Skeleton& gt, const Skeleton& cand,
                         const CompareOptions& options = {});

/// Program-level comparison; also fills the movement-instruction counts and
/// their overhead ratio.
ComparisonReport compare(const GcodeProgram& gt, const GcodeProgram& cand,
                         const CompareOptions& options = {});

/// Alignment-free baseline: layers pair by index, both trajectories are
/// resampled to 256 points by arc length, and per-layer similarity is
/// 100 * (1 - clip(MSE / D_gt^2, 0, 1)). Returns the mean over layers
/// (unpaired layers score 0).
double nmse_similarity(const Skeleton& gt, const Skeleton& cand);

constexpr std::size_t kNmseResamplePoints = 256;

}  // namespace gcf
