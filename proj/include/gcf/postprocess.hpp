#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcf/gcode.hpp"

namespace gcf {

enum class MoveClass { G0, G1 };

/// One movement predicted by an upstream trajectory model: its command class
/// and a noisy destination.
struct TrajectoryPrediction {
    MoveClass command_class = MoveClass::G1;
    double x = 0.0;
    double y = 0.0;
    double z_raw = 0.0;  // continuous, noisy
};

enum class ExtrusionMode { absolute, relative };

struct PrinterProfile {
    double layer_height = 0.3;       // mm
    double flow_modifier = 1.0;
    double nozzle_diameter = 0.4;    // mm
    double filament_diameter = 1.75; // mm
    double z_step = 0.3;             // mm per layer increment
    double feed_g0 = 7740.0;         // mm/min
    double feed_g1 = 3600.0;         // mm/min
    ExtrusionMode extrusion_mode = ExtrusionMode::absolute;

    void validate() const;  // throws DataError on non-positive quantities
};

/// Exact PELT change-point detection for a piecewise-constant-mean signal
/// under an L2 segment cost with a linear penalty per change point. Returns
/// the strictly increasing start indices of every segment after the first;
/// all segments span at least `min_segment` samples. A series shorter than
/// 2 * min_segment has no room for a change point and yields an empty result.
std::vector<std::size_t> detect_z_changepoints(const std::vector<double>& z_series,
                                               double penalty, std::size_t min_segment);

/// Discretize a Z series given its change points: the first segment sits at
/// the profile layer height (0.3 by default) and each later segment steps up
/// by z_step. Output length equals input length.
std::vector<double> normalize_z(const std::vector<double>& z_series,
                                const std::vector<std::size_t>& changepoints,
                                const PrinterProfile& profile);

/// Filament length for one straight print move of length l:
/// E = (4 * h * s * l * d_n) / (pi * d_f^2), i.e. bead volume conservation.
double compute_extrusion(const PrinterProfile& profile, double segment_length);

/// G0 -> profile.feed_g0, G1 -> profile.feed_g1 (mm/min).
double assign_feed_rate(MoveClass command_class, const PrinterProfile& profile);

/// Turn a prediction stream into a printable program: Z values are
/// change-point-detected and discretized, every G1 gets an extrusion amount
/// from the XY distance to the previous position (cumulative in absolute
/// mode; the first instruction has no prior and carries no E), and the feed
/// rate is emitted on the first instruction of each command-class run.
GcodeProgram build_gcode(const std::vector<TrajectoryPrediction>& predictions,
                         const PrinterProfile& profile, double pelt_penalty = 0.05,
                         std::size_t pelt_min_segment = 3);

/// Predictions CSV: header `cmd,x,y,z`, one row per movement, cmd in {G0,G1}.
std::vector<TrajectoryPrediction> read_predictions_csv(const std::string& path);
void write_predictions_csv(const std::vector<TrajectoryPrediction>& predictions,
                           const std::string& path);

/// PrinterProfile JSON with the field names above; missing fields keep their
/// defaults, extrusion_mode is "absolute" or "relative".
PrinterProfile read_profile_json(const std::string& path);

}  // namespace gcf
