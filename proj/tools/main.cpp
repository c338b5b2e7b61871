// gcf: G-code forensics toolkit command-line front end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcf/dataset.hpp"
#include "gcf/equivalence.hpp"
#include "gcf/errors.hpp"
#include "gcf/gcode.hpp"
#include "gcf/manipulator.hpp"
#include "gcf/postprocess.hpp"
#include "gcf/svg.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed) {
    if (cli_seed)
        return *cli_seed;
    if (const char* env = std::getenv("GCODE_FORENSICS_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

json alignment_to_json(const gcf::AlignmentResult& a) {
    return json{{"translation", {a.translation.x, a.translation.y}},
                {"rotation_deg", a.rotation_deg},
                {"fused_area", a.fused_area},
                {"gt_area", a.gt_area},
                {"objective", a.objective},
                {"translation_only", a.translation_only}};
}

json report_to_json(const gcf::ComparisonReport& report, const std::string& gt_path,
                    const std::string& cand_path, std::optional<double> nmse) {
    json per_layer = json::array();
    for (const gcf::LayerScore& s : report.per_layer) {
        per_layer.push_back(json{{"layer_index", s.layer_index},
                                 {"gt_z", s.gt_z},
                                 {"dissimilarity_pct", s.dissimilarity_pct},
                                 {"raw_dtw", s.raw_dtw},
                                 {"paired", s.paired},
                                 {"alignment", alignment_to_json(s.alignment)}});
    }
    json out{{"schema_version", 1},
             {"gt", gt_path},
             {"cand", cand_path},
             {"gt_layer_count", report.gt_layer_count},
             {"cand_layer_count", report.cand_layer_count},
             {"gt_instruction_count", report.gt_instruction_count},
             {"cand_instruction_count", report.cand_instruction_count},
             {"instruction_overhead_ratio", report.instruction_overhead_ratio},
             {"height_penalty_pct", report.height_penalty_pct},
             {"aggregate_dissimilarity_pct", report.aggregate_dissimilarity_pct},
             {"aggregate_similarity_pct", report.aggregate_similarity_pct},
             {"per_layer", per_layer}};
    if (nmse)
        out["baseline_nmse_similarity_pct"] = *nmse;
    return out;
}

void write_per_layer_csv(const gcf::ComparisonReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw gcf::DataError("cannot write CSV file: " + path);
    out << "layer_index,gt_z,dissimilarity_pct,raw_dtw,translation_dx,translation_dy,"
           "rotation_deg,fused_area,gt_area,objective,paired\n";
    for (const gcf::LayerScore& s : report.per_layer) {
        out << s.layer_index << ',' << gcf::format_number(s.gt_z) << ','
            << gcf::format_number(s.dissimilarity_pct) << ','
            << gcf::format_number(s.raw_dtw) << ','
            << gcf::format_number(s.alignment.translation.x) << ','
            << gcf::format_number(s.alignment.translation.y) << ','
            << s.alignment.rotation_deg << ',' << gcf::format_number(s.alignment.fused_area)
            << ',' << gcf::format_number(s.alignment.gt_area) << ','
            << gcf::format_number(s.alignment.objective) << ',' << (s.paired ? 1 : 0) << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw gcf::DataError("cannot write file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"G-code forensics: similarity checking, manipulation, trajectory recovery"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "Seed for all randomized operations");

    // parse
    auto* cmd_parse = app.add_subcommand("parse", "Parse a G-code file and report stats");
    std::string parse_in, parse_out;
    cmd_parse->add_option("--in", parse_in, "Input .gcode file")->required();
    cmd_parse->add_option("--out", parse_out, "Write the canonical re-emission here");

    // skeleton
    auto* cmd_skel = app.add_subcommand("skeleton", "Extract the per-layer trajectory as JSON");
    std::string skel_in, skel_out;
    cmd_skel->add_option("--in", skel_in, "Input .gcode file")->required();
    cmd_skel->add_option("--out", skel_out, "Output JSON file (stdout if omitted)");

    // manipulate
    auto* cmd_man = app.add_subcommand("manipulate", "Rotate/translate a G-code rigidly");
    std::string man_in, man_out;
    double man_rotate = 0.0;
    std::pair<double, double> man_translate{0.0, 0.0};
    bool man_has_translate = false;
    cmd_man->add_option("--in", man_in, "Input .gcode file")->required();
    cmd_man->add_option("--rotate", man_rotate, "Rotation in degrees CCW about the centroid");
    cmd_man
        ->add_option_function<std::string>(
            "--translate",
            [&](const std::string& value) {
                const auto comma = value.find(',');
                if (comma == std::string::npos)
                    throw CLI::ValidationError("--translate expects dx,dy");
                man_translate.first = std::stod(value.substr(0, comma));
                man_translate.second = std::stod(value.substr(comma + 1));
                man_has_translate = true;
            },
            "Translation dx,dy in mm")
        ->type_name("DX,DY");
    cmd_man->add_option("--out", man_out, "Output .gcode file")->required();

    // compare
    auto* cmd_cmp = app.add_subcommand("compare", "Compare two G-codes layer by layer");
    std::string cmp_gt, cmp_cand, cmp_report, cmp_csv, cmp_baseline;
    bool cmp_skip_brim = false, cmp_global_align = false;
    unsigned cmp_jobs = 1;
    cmd_cmp->add_option("--gt", cmp_gt, "Ground-truth .gcode")->required();
    cmd_cmp->add_option("--cand", cmp_cand, "Candidate .gcode")->required();
    cmd_cmp->add_option("--report", cmp_report, "Output JSON report")->required();
    cmd_cmp->add_option("--per-layer", cmp_csv, "Output per-layer CSV");
    cmd_cmp->add_flag("--skip-brim", cmp_skip_brim, "Exclude the first (adhesion) layer");
    cmd_cmp->add_flag("--global-align", cmp_global_align,
                      "Reuse the first layer's transform for all layers");
    cmd_cmp->add_option("--baseline", cmp_baseline, "Also compute a baseline metric (nmse)");
    cmd_cmp->add_option("--jobs", cmp_jobs, "Layer-scoring threads")->check(CLI::Range(1u, 256u));

    // postprocess
    auto* cmd_post = app.add_subcommand("postprocess",
                                        "Turn trajectory predictions into printable G-code");
    std::string post_in, post_profile, post_out;
    double post_penalty = 0.05;
    std::size_t post_min_segment = 3;
    cmd_post->add_option("--in", post_in, "Predictions CSV (cmd,x,y,z)")->required();
    cmd_post->add_option("--profile", post_profile, "Printer profile JSON");
    cmd_post->add_option("--pelt-penalty", post_penalty, "PELT penalty per change point");
    cmd_post->add_option("--pelt-min-segment", post_min_segment, "PELT minimum segment length");
    cmd_post->add_option("--out", post_out, "Output .gcode file")->required();

    // gen-dataset
    auto* cmd_gen = app.add_subcommand("gen-dataset",
                                       "Generate a synthetic object and its R/T/RT variants");
    std::string gen_shape_name = "polygon_prism", gen_variant = "R", gen_out_dir = ".";
    std::string gen_infill = "concentric", gen_predictions;
    std::size_t gen_sides = 4, gen_layers = 10, gen_points = 22;
    double gen_footprint = 20.0, gen_xy_sigma = 0.0, gen_z_sigma = 0.0;
    cmd_gen->add_option("--shape", gen_shape_name,
                        "Shape kind: polygon_prism | star_prism | asymmetric_L");
    cmd_gen->add_option("--variant", gen_variant, "Variant set: R | T | RT | none");
    cmd_gen->add_option("--out-dir", gen_out_dir, "Output directory")->required();
    cmd_gen->add_option("--sides", gen_sides, "Polygon sides / star spikes");
    cmd_gen->add_option("--layers", gen_layers, "Number of layers");
    cmd_gen->add_option("--footprint", gen_footprint, "Footprint size in mm");
    cmd_gen->add_option("--points", gen_points, "Points per outline loop");
    cmd_gen->add_option("--infill", gen_infill, "Infill: concentric | none");
    cmd_gen->add_option("--emit-predictions", gen_predictions,
                        "Also write a noisy predictions CSV for the base object");
    cmd_gen->add_option("--xy-sigma", gen_xy_sigma, "XY noise sigma for --emit-predictions");
    cmd_gen->add_option("--z-sigma", gen_z_sigma, "Z noise sigma for --emit-predictions");

    // plot
    auto* cmd_plot = app.add_subcommand("plot", "SVG overlay of one layer of two G-codes");
    std::string plot_gt, plot_cand, plot_out;
    std::size_t plot_layer = 0;
    bool plot_align = false;
    cmd_plot->add_option("--gt", plot_gt, "Ground-truth .gcode")->required();
    cmd_plot->add_option("--cand", plot_cand, "Candidate .gcode (optional)");
    cmd_plot->add_option("--layer", plot_layer, "Layer index (0-based)")->required();
    cmd_plot->add_flag("--align", plot_align, "Align the candidate layer before plotting");
    cmd_plot->add_option("--out", plot_out, "Output SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_parse) {
            const gcf::GcodeProgram program = gcf::parse_gcode_file(parse_in);
            const gcf::Skeleton skeleton = gcf::extract_skeleton(program);
            std::cout << parse_in << ": " << program.instructions.size() << " instructions, "
                      << program.movement_count() << " movements, " << skeleton.layers.size()
                      << " layers, " << skeleton.total_points() << " trajectory points\n";
            if (skeleton.empty())
                std::cerr << "warning: no print moves found (empty skeleton)\n";
            if (!parse_out.empty())
                gcf::write_gcode_file(program, parse_out);
        } else if (*cmd_skel) {
            const gcf::Skeleton skeleton =
                gcf::extract_skeleton(gcf::parse_gcode_file(skel_in));
            if (skeleton.empty())
                std::cerr << "warning: no print moves found (empty skeleton)\n";
            json layers = json::array();
            for (const gcf::Layer& layer : skeleton.layers) {
                json points = json::array();
                for (gcf::Vec2 p : layer.points) points.push_back({p.x, p.y});
                layers.push_back(json{{"z", layer.z}, {"points", points}});
            }
            const json out{{"schema_version", 1}, {"layers", layers}};
            if (skel_out.empty())
                std::cout << out.dump(2) << '\n';
            else
                write_text_file(skel_out, out.dump(2) + "\n");
        } else if (*cmd_man) {
            gcf::GcodeProgram program = gcf::parse_gcode_file(man_in);
            if (man_rotate != 0.0)
                program = gcf::rotate_gcode(program, man_rotate);
            if (man_has_translate)
                program = gcf::translate_gcode(program, man_translate.first,
                                               man_translate.second);
            if (const std::size_t outside = gcf::count_out_of_bed(program); outside > 0)
                std::cerr << "warning: " << outside
                          << " movement(s) fall outside the 250x250 mm build area\n";
            gcf::write_gcode_file(program, man_out);
        } else if (*cmd_cmp) {
            const gcf::GcodeProgram gt = gcf::parse_gcode_file(cmp_gt);
            const gcf::GcodeProgram cand = gcf::parse_gcode_file(cmp_cand);
            gcf::CompareOptions options;
            options.skip_brim = cmp_skip_brim;
            options.global_align = cmp_global_align;
            options.jobs = cmp_jobs;
            const gcf::ComparisonReport report = gcf::compare(gt, cand, options);
            std::optional<double> nmse;
            if (!cmp_baseline.empty()) {
                if (cmp_baseline != "nmse")
                    throw gcf::DataError("unknown baseline: " + cmp_baseline);
                nmse = gcf::nmse_similarity(gcf::extract_skeleton(gt),
                                            gcf::extract_skeleton(cand));
            }
            write_text_file(cmp_report,
                            report_to_json(report, cmp_gt, cmp_cand, nmse).dump(2) + "\n");
            if (!cmp_csv.empty())
                write_per_layer_csv(report, cmp_csv);
            std::cout << "similarity: " << gcf::format_number(report.aggregate_similarity_pct)
                      << " %";
            if (nmse)
                std::cout << "  (nmse baseline: " << gcf::format_number(*nmse) << " %)";
            std::cout << '\n';
        } else if (*cmd_post) {
            const auto predictions = gcf::read_predictions_csv(post_in);
            gcf::PrinterProfile profile;
            if (!post_profile.empty())
                profile = gcf::read_profile_json(post_profile);
            const gcf::GcodeProgram program =
                gcf::build_gcode(predictions, profile, post_penalty, post_min_segment);
            gcf::write_gcode_file(program, post_out);
            std::cout << "wrote " << program.instructions.size() << " instructions to "
                      << post_out << '\n';
        } else if (*cmd_gen) {
            gcf::ShapeSpec spec;
            if (gen_shape_name == "polygon_prism")
                spec.kind = gcf::ShapeKind::polygon_prism;
            else if (gen_shape_name == "star_prism")
                spec.kind = gcf::ShapeKind::star_prism;
            else if (gen_shape_name == "asymmetric_L")
                spec.kind = gcf::ShapeKind::asymmetric_L;
            else
                throw gcf::DataError("unknown shape: " + gen_shape_name);
            spec.sides = gen_sides;
            spec.num_layers = gen_layers;
            spec.footprint_size = gen_footprint;
            spec.points_per_layer = gen_points;
            if (gen_infill == "concentric")
                spec.infill = gcf::InfillKind::concentric;
            else if (gen_infill == "none")
                spec.infill = gcf::InfillKind::none;
            else
                throw gcf::DataError("unknown infill: " + gen_infill);

            const std::uint64_t run_seed = resolve_seed(seed);
            const gcf::GcodeProgram base = gcf::gen_shape(spec, run_seed);
            std::filesystem::create_directories(gen_out_dir);
            const std::filesystem::path dir(gen_out_dir);
            gcf::write_gcode_file(base, (dir / "base.gcode").string());

            json manifest{{"schema_version", 1},
                          {"shape", gen_shape_name},
                          {"sides", spec.sides},
                          {"layers", spec.num_layers},
                          {"footprint", spec.footprint_size},
                          {"points_per_layer", spec.points_per_layer},
                          {"infill", gen_infill},
                          {"seed", run_seed},
                          {"base", "base.gcode"},
                          {"variants", json::array()}};

            if (gen_variant != "none") {
                gcf::VariantSpec vspec;
                if (gen_variant == "R")
                    vspec.variant = gcf::VariantKind::R;
                else if (gen_variant == "T")
                    vspec.variant = gcf::VariantKind::T;
                else if (gen_variant == "RT")
                    vspec.variant = gcf::VariantKind::RT;
                else
                    throw gcf::DataError("unknown variant: " + gen_variant);
                const auto variants = gcf::gen_variants(base, vspec);
                for (const gcf::GeneratedVariant& v : variants) {
                    const std::string file = v.label + ".gcode";
                    gcf::write_gcode_file(v.program, (dir / file).string());
                    manifest["variants"].push_back(json{{"label", v.label},
                                                        {"file", file},
                                                        {"theta_deg", v.theta_deg},
                                                        {"dx", v.dx},
                                                        {"dy", v.dy}});
                }
                std::cout << "wrote base + " << variants.size() << " variants to "
                          << gen_out_dir << '\n';
            } else {
                std::cout << "wrote base object to " << gen_out_dir << '\n';
            }

            if (!gen_predictions.empty()) {
                const auto predictions =
                    gcf::inject_noise(base, gen_xy_sigma, gen_z_sigma, run_seed);
                gcf::write_predictions_csv(predictions, gen_predictions);
                manifest["predictions"] = gen_predictions;
            }
            write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
        } else if (*cmd_plot) {
            const gcf::Skeleton gt = gcf::extract_skeleton(gcf::parse_gcode_file(plot_gt));
            if (plot_layer >= gt.layers.size())
                throw gcf::DataError("layer index out of range for ground truth");
            std::vector<gcf::SvgPath> paths;
            paths.push_back({gt.layers[plot_layer].points, "blue"});
            if (!plot_cand.empty()) {
                const gcf::Skeleton cand =
                    gcf::extract_skeleton(gcf::parse_gcode_file(plot_cand));
                if (plot_layer >= cand.layers.size())
                    throw gcf::DataError("layer index out of range for candidate");
                std::vector<gcf::Vec2> points = cand.layers[plot_layer].points;
                if (plot_align) {
                    auto [alignment, aligned] =
                        gcf::align_layer(gt.layers[plot_layer], cand.layers[plot_layer]);
                    points = std::move(aligned);
                }
                paths.push_back({std::move(points), "red"});
            }
            gcf::write_svg_file(paths, plot_out);
        }
    } catch (const gcf::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const gcf::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
