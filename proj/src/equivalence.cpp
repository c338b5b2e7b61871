#include "gcf/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "gcf/errors.hpp"

namespace gcf {

namespace {

constexpr double kAreaTieEps = 1e-9;  // mm^2

bool usable_for_rotation(const Polygon& p) {
    return !p.degenerate() && polygon_area(p) >= kGeomEps;
}

}  // namespace

AlignmentResult best_rotation(const Polygon& gt_poly, const Polygon& cand_poly) {
    if (!usable_for_rotation(gt_poly) || !usable_for_rotation(cand_poly))
        throw DataError("best_rotation: degenerate bounding polygon");

    const double gt_area = polygon_area(gt_poly);
    const Vec2 pivot = polygon_centroid(gt_poly);

    AlignmentResult best;
    best.gt_area = gt_area;
    best.objective = std::numeric_limits<double>::infinity();

    Polygon rotated = cand_poly;
    for (int angle = 0; angle < 360; ++angle) {
        rotated.vertices = rotate_points(cand_poly.vertices, pivot, static_cast<double>(angle));
        const double fused = union_area(gt_poly, rotated);
        const double objective = std::abs(fused - gt_area);
        if (objective < best.objective - kAreaTieEps) {
            best.rotation_deg = angle;
            best.fused_area = fused;
            best.objective = objective;
        }
    }
    return best;
}

std::pair<AlignmentResult, std::vector<Vec2>> align_layer(const Layer& gt, const Layer& cand) {
    if (gt.points.empty() || cand.points.empty())
        throw DataError("align_layer: empty layer");

    const Polygon gt_hull = convex_hull(gt.points);
    const Polygon cand_hull = convex_hull(cand.points);
    const Vec2 gt_c = polygon_centroid(gt_hull);
    const Vec2 cand_c = polygon_centroid(cand_hull);
    const Vec2 shift = gt_c - cand_c;

    std::vector<Vec2> aligned = translate_points(cand.points, shift.x, shift.y);

    if (!usable_for_rotation(gt_hull) || !usable_for_rotation(cand_hull)) {
        AlignmentResult result;
        result.translation = shift;
        result.rotation_deg = 0;
        result.gt_area = polygon_area(gt_hull);
        Polygon shifted_hull{translate_points(cand_hull.vertices, shift.x, shift.y)};
        result.fused_area = union_area(gt_hull, shifted_hull);
        result.objective = std::abs(result.fused_area - result.gt_area);
        result.translation_only = true;
        return {result, std::move(aligned)};
    }

    Polygon shifted_hull{translate_points(cand_hull.vertices, shift.x, shift.y)};
    AlignmentResult result = best_rotation(gt_hull, shifted_hull);
    result.translation = shift;
    aligned = rotate_points(std::move(aligned), gt_c, static_cast<double>(result.rotation_deg));
    return {result, std::move(aligned)};
}

double subsequence_dtw(const std::vector<Vec2>& reference, const std::vector<Vec2>& query) {
    if (reference.empty() || query.empty())
        throw DataError("subsequence_dtw: empty sequence");

    // The shorter sequence must be matched in full; start and end are free
    // on the longer one.
    const std::vector<Vec2>* longer = &reference;
    const std::vector<Vec2>* shorter = &query;
    if (shorter->size() > longer->size())
        std::swap(longer, shorter);

    const std::size_t n = longer->size();
    const std::size_t m = shorter->size();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> prev(n + 1, 0.0);  // row 0: free start anywhere
    std::vector<double> cur(n + 1, 0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = kInf;
        const Vec2 q = (*shorter)[i - 1];
        for (std::size_t j = 1; j <= n; ++j) {
            const Vec2 r = (*longer)[j - 1];
            const double cost = std::hypot(q.x - r.x, q.y - r.y);
            cur[j] = cost + std::min({prev[j], prev[j - 1], cur[j - 1]});
        }
        std::swap(prev, cur);
    }
    double best = kInf;
    for (std::size_t j = 1; j <= n; ++j)
        best = std::min(best, prev[j]);
    return best;
}

LayerScore layer_dissimilarity(const Layer& gt, const Layer& cand) {
    LayerScore score;
    score.gt_z = gt.z;
    if (gt.points.empty())
        throw DataError("layer_dissimilarity: empty ground-truth layer");
    if (cand.points.empty()) {
        score.dissimilarity_pct = 100.0;
        return score;
    }

    auto [alignment, aligned] = align_layer(gt, cand);
    score.alignment = alignment;
    score.raw_dtw = subsequence_dtw(gt.points, aligned);

    const double diag = bounding_box_diagonal(gt.points);
    const double denom = static_cast<double>(gt.points.size()) * diag;
    if (denom < kGeomEps)
        score.dissimilarity_pct = score.raw_dtw < kGeomEps ? 0.0 : 100.0;
    else
        score.dissimilarity_pct = std::clamp(100.0 * score.raw_dtw / denom, 0.0, 100.0);
    return score;
}

namespace {

LayerScore score_with_transform(const Layer& gt, const Layer& cand,
                                const AlignmentResult& alignment, Vec2 pivot) {
    LayerScore score;
    score.gt_z = gt.z;
    score.alignment = alignment;
    std::vector<Vec2> aligned =
        translate_points(cand.points, alignment.translation.x, alignment.translation.y);
    aligned = rotate_points(std::move(aligned), pivot, static_cast<double>(alignment.rotation_deg));
    score.raw_dtw = subsequence_dtw(gt.points, aligned);
    const double denom =
        static_cast<double>(gt.points.size()) * bounding_box_diagonal(gt.points);
    if (denom < kGeomEps)
        score.dissimilarity_pct = score.raw_dtw < kGeomEps ? 0.0 : 100.0;
    else
        score.dissimilarity_pct = std::clamp(100.0 * score.raw_dtw / denom, 0.0, 100.0);
    return score;
}

void run_indexed(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace

ComparisonReport compare(const Skeleton& gt, const Skeleton& cand, const CompareOptions& options) {
    if (gt.empty() || cand.empty())
        throw DataError("compare: empty skeleton");

    std::vector<Layer> gt_layers = gt.layers;
    std::vector<Layer> cand_layers = cand.layers;
    if (options.skip_brim) {
        gt_layers.erase(gt_layers.begin());
        cand_layers.erase(cand_layers.begin());
        if (gt_layers.empty() || cand_layers.empty())
            throw DataError("compare: skeleton empty after --skip-brim");
    }

    const std::size_t n_gt = gt_layers.size();
    const std::size_t n_cand = cand_layers.size();
    const std::size_t paired = std::min(n_gt, n_cand);
    const std::size_t total = std::max(n_gt, n_cand);

    ComparisonReport report;
    report.gt_layer_count = n_gt;
    report.cand_layer_count = n_cand;
    report.per_layer.resize(total);

    AlignmentResult shared_alignment;
    Vec2 shared_pivot;
    if (options.global_align) {
        auto [alignment, aligned] = align_layer(gt_layers[0], cand_layers[0]);
        shared_alignment = alignment;
        shared_pivot = polygon_centroid(convex_hull(gt_layers[0].points));
        (void)aligned;
    }

    run_indexed(paired, options.jobs, [&](std::size_t i) {
        LayerScore score = options.global_align
                               ? score_with_transform(gt_layers[i], cand_layers[i],
                                                      shared_alignment, shared_pivot)
                               : layer_dissimilarity(gt_layers[i], cand_layers[i]);
        score.layer_index = i;
        score.paired = true;
        report.per_layer[i] = std::move(score);
    });

    for (std::size_t i = paired; i < total; ++i) {
        LayerScore score;
        score.layer_index = i;
        score.paired = false;
        score.gt_z = i < n_gt ? gt_layers[i].z : cand_layers[i].z;
        score.dissimilarity_pct = 100.0;
        report.per_layer[i] = std::move(score);
    }

    double sum = 0.0;
    for (const LayerScore& s : report.per_layer) sum += s.dissimilarity_pct;
    const double mean = sum / static_cast<double>(total);

    report.height_penalty_pct =
        100.0 * static_cast<double>(n_gt > n_cand ? n_gt - n_cand : n_cand - n_gt) /
        static_cast<double>(total);
    report.aggregate_dissimilarity_pct =
        std::clamp(mean + report.height_penalty_pct, 0.0, 100.0);
    report.aggregate_similarity_pct = 100.0 - report.aggregate_dissimilarity_pct;
    return report;
}

ComparisonReport compare(const GcodeProgram& gt, const GcodeProgram& cand,
                         const CompareOptions& options) {
    ComparisonReport report = compare(extract_skeleton(gt), extract_skeleton(cand), options);
    report.gt_instruction_count = gt.movement_count();
    report.cand_instruction_count = cand.movement_count();
    report.instruction_overhead_ratio =
        report.gt_instruction_count == 0
            ? 0.0
            : static_cast<double>(report.cand_instruction_count) /
                  static_cast<double>(report.gt_instruction_count);
    return report;
}

double nmse_similarity(const Skeleton& gt, const Skeleton& cand) {
    if (gt.empty() || cand.empty())
        throw DataError("nmse_similarity: empty skeleton");

    const std::size_t paired = std::min(gt.layers.size(), cand.layers.size());
    const std::size_t total = std::max(gt.layers.size(), cand.layers.size());

    double sum = 0.0;
    for (std::size_t i = 0; i < paired; ++i) {
        const auto a = resample_polyline(gt.layers[i].points, kNmseResamplePoints);
        const auto b = resample_polyline(cand.layers[i].points, kNmseResamplePoints);
        double mse = 0.0;
        for (std::size_t k = 0; k < kNmseResamplePoints; ++k) {
            const double dx = a[k].x - b[k].x;
            const double dy = a[k].y - b[k].y;
            mse += dx * dx + dy * dy;
        }
        mse /= static_cast<double>(kNmseResamplePoints);
        const double diag = bounding_box_diagonal(gt.layers[i].points);
        double similarity;
        if (diag < kGeomEps)
            similarity = mse < kGeomEps ? 100.0 : 0.0;
        else
            similarity = 100.0 * (1.0 - std::clamp(mse / (diag * diag), 0.0, 1.0));
        sum += similarity;
    }
    // Unpaired layers contribute similarity 0.
    return sum / static_cast<double>(total);
}

}  // namespace gcf
