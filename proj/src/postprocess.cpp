#include "gcf/postprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gcf/errors.hpp"

namespace gcf {

void PrinterProfile::validate() const {
    const bool ok = layer_height > 0.0 && flow_modifier > 0.0 && nozzle_diameter > 0.0 &&
                    filament_diameter > 0.0 && z_step > 0.0 && feed_g0 > 0.0 && feed_g1 > 0.0;
    if (!ok)
        throw DataError("printer profile: all physical quantities must be positive");
}

namespace {

// L2 cost of fitting one constant mean to y[a..b), via prefix sums.
struct SegmentCost {
    std::vector<double> sum;
    std::vector<double> sum_sq;

    explicit SegmentCost(const std::vector<double>& y)
        : sum(y.size() + 1, 0.0), sum_sq(y.size() + 1, 0.0) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            sum[i + 1] = sum[i] + y[i];
            sum_sq[i + 1] = sum_sq[i] + y[i] * y[i];
        }
    }

    double operator()(std::size_t a, std::size_t b) const {
        const double s = sum[b] - sum[a];
        return sum_sq[b] - sum_sq[a] - s * s / static_cast<double>(b - a);
    }
};

}  // namespace

std::vector<std::size_t> detect_z_changepoints(const std::vector<double>& z_series,
                                               double penalty, std::size_t min_segment) {
    if (penalty < 0.0)
        throw DataError("detect_z_changepoints: penalty must be >= 0");
    if (min_segment == 0)
        min_segment = 1;
    const std::size_t n = z_series.size();
    if (n < 2 * min_segment)
        return {};

    const SegmentCost cost(z_series);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> f(n + 1, kInf);
    std::vector<std::size_t> back(n + 1, 0);
    f[0] = -penalty;

    // Candidate previous segment starts, ascending. A candidate pruned at
    // time t stays usable until t + min_segment: the dominating path through
    // t only becomes admissible once t itself can end a full segment.
    struct Candidate {
        std::size_t tau;
        std::size_t dead_after;
    };
    std::vector<Candidate> candidates{{0, std::numeric_limits<std::size_t>::max()}};

    for (std::size_t t = min_segment; t <= n; ++t) {
        if (t >= 2 * min_segment)
            candidates.push_back({t - min_segment, std::numeric_limits<std::size_t>::max()});

        double best = kInf;
        std::size_t best_tau = 0;
        for (const Candidate& c : candidates) {
            if (t >= c.dead_after || c.tau + min_segment > t)
                continue;
            const double v = f[c.tau] + cost(c.tau, t) + penalty;
            if (v < best) {
                best = v;
                best_tau = c.tau;
            }
        }
        f[t] = best;
        back[t] = best_tau;

        for (Candidate& c : candidates) {
            if (t >= c.dead_after || c.tau + min_segment > t)
                continue;
            if (f[c.tau] + cost(c.tau, t) > f[t])
                c.dead_after = std::min(c.dead_after, t + min_segment);
        }
        std::erase_if(candidates, [t](const Candidate& c) { return t + 1 >= c.dead_after; });
    }

    std::vector<std::size_t> changepoints;
    for (std::size_t t = n; back[t] != 0; t = back[t])
        changepoints.push_back(back[t]);
    std::reverse(changepoints.begin(), changepoints.end());
    return changepoints;
}

std::vector<double> normalize_z(const std::vector<double>& z_series,
                                const std::vector<std::size_t>& changepoints,
                                const PrinterProfile& profile) {
    std::vector<double> out(z_series.size(), 0.0);
    std::size_t next_cp = 0;
    double z = profile.layer_height;
    for (std::size_t i = 0; i < z_series.size(); ++i) {
        while (next_cp < changepoints.size() && changepoints[next_cp] == i) {
            z += profile.z_step;
            ++next_cp;
        }
        out[i] = z;
    }
    return out;
}

double compute_extrusion(const PrinterProfile& profile, double segment_length) {
    if (segment_length < 0.0)
        throw DataError("compute_extrusion: negative segment length");
    const double k = 4.0 * profile.layer_height * profile.flow_modifier *
                     profile.nozzle_diameter /
                     (std::numbers::pi * profile.filament_diameter * profile.filament_diameter);
    return k * segment_length;
}

double assign_feed_rate(MoveClass command_class, const PrinterProfile& profile) {
    return command_class == MoveClass::G0 ? profile.feed_g0 : profile.feed_g1;
}

GcodeProgram build_gcode(const std::vector<TrajectoryPrediction>& predictions,
                         const PrinterProfile& profile, double pelt_penalty,
                         std::size_t pelt_min_segment) {
    if (predictions.empty())
        throw DataError("build_gcode: no predictions");
    profile.validate();

    std::vector<double> z_series;
    z_series.reserve(predictions.size());
    for (const TrajectoryPrediction& p : predictions) z_series.push_back(p.z_raw);
    const auto changepoints = detect_z_changepoints(z_series, pelt_penalty, pelt_min_segment);
    const auto z = normalize_z(z_series, changepoints, profile);

    GcodeProgram program;
    program.source_name = "<recovered>";
    program.instructions.reserve(predictions.size());

    double e_cumulative = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const TrajectoryPrediction& p = predictions[i];
        Instruction inst;
        inst.command = p.command_class == MoveClass::G0 ? Command::G0 : Command::G1;
        inst.x = p.x;
        inst.y = p.y;
        if (i == 0 || z[i] != z[i - 1])
            inst.z = z[i];
        if (p.command_class == MoveClass::G1 && i > 0) {
            const double len =
                std::hypot(p.x - predictions[i - 1].x, p.y - predictions[i - 1].y);
            const double e = compute_extrusion(profile, len);
            if (profile.extrusion_mode == ExtrusionMode::absolute) {
                e_cumulative += e;
                inst.e = e_cumulative;
            } else {
                inst.e = e;
            }
        }
        if (i == 0 || predictions[i - 1].command_class != p.command_class)
            inst.f = assign_feed_rate(p.command_class, profile);
        program.instructions.push_back(std::move(inst));
    }
    return program;
}

std::vector<TrajectoryPrediction> read_predictions_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open predictions CSV: " + path);

    auto trim = [](std::string s) {
        const auto is_space = [](unsigned char c) { return std::isspace(c); };
        while (!s.empty() && is_space(s.back())) s.pop_back();
        std::size_t i = 0;
        while (i < s.size() && is_space(s[i])) ++i;
        return s.substr(i);
    };

    std::string line;
    std::size_t line_no = 0;
    std::vector<TrajectoryPrediction> out;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty())
            continue;
        if (line_no == 1) {
            if (trim(trimmed) != "cmd,x,y,z")
                throw ParseError(path + ":1: expected header 'cmd,x,y,z'", 1);
            continue;
        }
        std::stringstream row(trimmed);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(trim(field));
        if (fields.size() != 4)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 4 fields",
                             line_no);
        TrajectoryPrediction p;
        if (fields[0] == "G0")
            p.command_class = MoveClass::G0;
        else if (fields[0] == "G1")
            p.command_class = MoveClass::G1;
        else
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown command '" +
                                 fields[0] + "'",
                             line_no);
        try {
            p.x = std::stod(fields[1]);
            p.y = std::stod(fields[2]);
            p.z_raw = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": malformed number",
                             line_no);
        }
        out.push_back(p);
    }
    return out;
}

void write_predictions_csv(const std::vector<TrajectoryPrediction>& predictions,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write predictions CSV: " + path);
    out << "cmd,x,y,z\n";
    for (const TrajectoryPrediction& p : predictions) {
        out << (p.command_class == MoveClass::G0 ? "G0" : "G1") << ',' << format_number(p.x)
            << ',' << format_number(p.y) << ',' << format_number(p.z_raw) << '\n';
    }
}

PrinterProfile read_profile_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open profile JSON: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": invalid JSON: " + e.what());
    }
    PrinterProfile profile;
    auto load = [&](const char* key, double& field) {
        if (j.contains(key))
            field = j.at(key).get<double>();
    };
    load("layer_height", profile.layer_height);
    load("flow_modifier", profile.flow_modifier);
    load("nozzle_diameter", profile.nozzle_diameter);
    load("filament_diameter", profile.filament_diameter);
    load("z_step", profile.z_step);
    load("feed_g0", profile.feed_g0);
    load("feed_g1", profile.feed_g1);
    if (j.contains("extrusion_mode")) {
        const std::string mode = j.at("extrusion_mode").get<std::string>();
        if (mode == "absolute")
            profile.extrusion_mode = ExtrusionMode::absolute;
        else if (mode == "relative")
            profile.extrusion_mode = ExtrusionMode::relative;
        else
            throw DataError(path + ": extrusion_mode must be 'absolute' or 'relative'");
    }
    profile.validate();
    return profile;
}

}  // namespace gcf
