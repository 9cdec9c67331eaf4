// mtaer: speed-invariant video event recognition via the temporal Mellin
// transform. Subcommands cover generation, transforms, correlation, the
// two-step search, threshold calibration, and the benchmark harness.
//
// Exit codes: 0 success (a non-match is a result, not an error),
// 1 domain/I-O error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mtaer/bench.hpp"
#include "mtaer/cube_io.hpp"
#include "mtaer/synthetic.hpp"
#include "mtaer/tsm.hpp"

namespace {

using namespace mtaer;

struct CommonFlags {
    std::optional<double> omega_low;
    std::optional<double> omega_high;
    std::size_t n_tau = 512;
    std::string method = "peak";
    double threshold = 0.5;
    std::optional<std::size_t> t1;
    std::optional<std::size_t> t2;
};

void add_mt_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--omega-low", flags.omega_low, "Low-frequency cutoff in Hz");
    cmd->add_option("--omega-high", flags.omega_high, "High-frequency cutoff in Hz");
    cmd->add_option("--n-tau", flags.n_tau, "Number of tau samples")
        ->capture_default_str();
}

void add_method_flag(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--method", flags.method, "Frame-level aggregation")
        ->check(CLI::IsMember({"power", "peak"}))
        ->capture_default_str();
}

TsmConfig make_config(const CommonFlags& flags) {
    TsmConfig config;
    config.omega_low = flags.omega_low;
    config.omega_high = flags.omega_high;
    config.n_tau = flags.n_tau;
    config.method =
        flags.method == "power" ? AggregationMethod::power : AggregationMethod::peak;
    config.threshold = flags.threshold;
    config.t1_frames = flags.t1;
    config.t2_frames = flags.t2;
    return config;
}

void emit(const std::string& document, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << document << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
        out << document << "\n";
    }
}

SyntheticSpec parse_spec_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("invalid spec JSON in " + path.string() + ": " + e.what());
    }

    SyntheticSpec spec;
    spec.width = j.value("width", spec.width);
    spec.height = j.value("height", spec.height);
    spec.num_frames = j.value("frames", spec.num_frames);
    spec.frame_rate = j.value("fps", spec.frame_rate);
    if (j.contains("object")) {
        const auto& obj = j["object"];
        const std::string kind = obj.value("kind", "gaussian");
        if (kind == "gaussian") {
            spec.kind = ObjectKind::gaussian_blob;
        } else if (kind == "rectangle") {
            spec.kind = ObjectKind::rectangle;
        } else {
            throw std::runtime_error("unknown object kind \"" + kind + "\"");
        }
        spec.size = obj.value("size", spec.size);
    }
    if (j.contains("start")) {
        spec.start_x = j["start"].at(0).get<double>();
        spec.start_y = j["start"].at(1).get<double>();
    }
    if (j.contains("velocity")) {
        spec.velocity_x = j["velocity"].at(0).get<double>();
        spec.velocity_y = j["velocity"].at(1).get<double>();
    }
    if (j.contains("modulation")) {
        const auto& mod = j["modulation"];
        spec.modulation_freq = mod.at("freq").get<double>();
        if (mod.contains("freq2")) spec.modulation_freq2 = mod["freq2"].get<double>();
        if (mod.contains("depth")) spec.modulation_depth = mod["depth"].get<double>();
        if (mod.contains("depth2")) spec.modulation_depth2 = mod["depth2"].get<double>();
    }
    spec.noise_sigma = j.value("noise_sigma", spec.noise_sigma);
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

std::vector<double> read_score_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open score file " + path.string());
    std::vector<double> scores;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            scores.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw std::runtime_error("non-numeric score line in " + path.string() +
                                     ": \"" + line + "\"");
        }
    }
    return scores;
}

std::string match_csv_header() {
    return "matched,alpha,event_frame,step1_score,step2_score,segment_index,absolute_frame";
}

std::string match_csv_row(const MatchResult& r) {
    std::ostringstream row;
    row << (r.matched ? 1 : 0) << ',' << r.alpha << ',';
    if (r.event_frame) row << *r.event_frame;
    row << ',' << r.step1_score << ',';
    if (r.step2_score) row << *r.step2_score;
    row << ',';
    if (r.segment_index) row << *r.segment_index;
    row << ',';
    if (r.absolute_frame) row << *r.absolute_frame;
    return row.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Speed-invariant video event recognition (temporal Mellin transform)"};
    app.require_subcommand(1);

    // gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Render a synthetic cube from a spec JSON");
    std::string gen_spec, gen_out;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--spec", gen_spec, "SyntheticSpec JSON file")->required();
    gen->add_option("--seed", gen_seed, "Override the spec's RNG seed");
    gen->add_option("--out", gen_out, "Output cube path (.mtvc)")->required();

    // mt --------------------------------------------------------------
    auto* mt = app.add_subcommand("mt", "Dump one pixel's Mellin transform as CSV");
    std::string mt_query, mt_pixel = "0,0", mt_out;
    CommonFlags mt_flags;
    mt->add_option("--query", mt_query, "Input cube")->required();
    mt->add_option("--pixel", mt_pixel, "Pixel as COL,ROW")->capture_default_str();
    add_mt_flags(mt, mt_flags);
    mt->add_option("--out", mt_out, "Output CSV path (default stdout)");

    // xcorr -----------------------------------------------------------
    auto* xc = app.add_subcommand(
        "xcorr", "Frame-domain aggregate cross-correlation of two cubes as CSV");
    std::string xc_query, xc_ref, xc_out;
    CommonFlags xc_flags;
    xc->add_option("--query", xc_query, "Query cube")->required();
    xc->add_option("--ref", xc_ref, "Reference cube")->required();
    add_method_flag(xc, xc_flags);
    xc->add_option("--out", xc_out, "Output CSV path (default stdout)");

    // estimate ----------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "Step I: speed-invariant scale estimate");
    std::string est_query, est_ref, est_out;
    bool est_csv = false;
    CommonFlags est_flags;
    est->add_option("--query", est_query, "Query cube")->required();
    est->add_option("--ref", est_ref, "Reference cube")->required();
    add_method_flag(est, est_flags);
    add_mt_flags(est, est_flags);
    est->add_option("--threshold", est_flags.threshold, "Detection threshold")
        ->capture_default_str();
    est->add_flag("--csv", est_csv, "Emit CSV instead of JSON");
    est->add_option("--out", est_out, "Output path (default stdout)");

    // tsm ---------------------------------------------------------------
    auto* tsm = app.add_subcommand("tsm", "Full two-step match: detect, rescale, localize");
    std::string tsm_query, tsm_ref, tsm_out;
    bool tsm_csv = false;
    CommonFlags tsm_flags;
    tsm->add_option("--query", tsm_query, "Query cube")->required();
    tsm->add_option("--ref", tsm_ref, "Reference cube")->required();
    add_method_flag(tsm, tsm_flags);
    add_mt_flags(tsm, tsm_flags);
    tsm->add_option("--threshold", tsm_flags.threshold, "Detection threshold")
        ->capture_default_str();
    tsm->add_flag("--csv", tsm_csv, "Emit CSV instead of JSON");
    tsm->add_option("--out", tsm_out, "Output path (default stdout)");

    // search ------------------------------------------------------------
    auto* search = app.add_subcommand("search", "Run the two-step method per database segment");
    std::string search_query, search_db, search_out;
    bool search_csv = false;
    CommonFlags search_flags;
    search->add_option("--query", search_query, "Query cube")->required();
    search->add_option("--db", search_db, "Database cube")->required();
    add_method_flag(search, search_flags);
    add_mt_flags(search, search_flags);
    search->add_option("--threshold", search_flags.threshold, "Detection threshold")
        ->capture_default_str();
    search->add_option("--t1", search_flags.t1, "Segment overlap in frames");
    search->add_option("--t2", search_flags.t2, "Segment window in frames");
    search->add_flag("--csv", search_csv, "Emit CSV instead of JSON");
    search->add_option("--out", search_out, "Output path (default stdout)");

    // calibrate -----------------------------------------------------------
    auto* cal = app.add_subcommand("calibrate", "Derive a detection threshold from scores");
    std::string cal_matched, cal_unmatched, cal_policy = "min-fp", cal_out;
    cal->add_option("--matched", cal_matched, "File with matched scores, one per line")
        ->required();
    cal->add_option("--unmatched", cal_unmatched, "File with unmatched scores, one per line")
        ->required();
    cal->add_option("--policy", cal_policy, "Threshold policy")
        ->check(CLI::IsMember({"min-fp", "min-fn"}))
        ->capture_default_str();
    cal->add_option("--out", cal_out, "Output path (default stdout)");

    // bench-* ---------------------------------------------------------
    struct BenchFlags {
        std::string out;
        std::uint64_t seed = 1;
        std::size_t clips = 10;
        std::size_t frames = 240;
        std::size_t size = 32;
        CommonFlags common;
    };
    auto add_bench = [&](const char* name, const char* help, BenchFlags& flags) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--out", flags.out, "Report directory")->required();
        cmd->add_option("--seed", flags.seed, "Corpus seed")->capture_default_str();
        cmd->add_option("--clips", flags.clips, "Number of distinct clips")
            ->capture_default_str();
        cmd->add_option("--frames", flags.frames, "Frames per clip")->capture_default_str();
        cmd->add_option("--size", flags.size, "Scene width and height in pixels")
            ->capture_default_str();
        add_method_flag(cmd, flags.common);
        add_mt_flags(cmd, flags.common);
        cmd->add_option("--threshold", flags.common.threshold, "Detection threshold")
            ->capture_default_str();
        return cmd;
    };
    BenchFlags sweep_flags, detect_flags, localize_flags;
    auto* sweep = add_bench("bench-sweep",
                            "Delta error vs scale factor, both methods", sweep_flags);
    auto* detect = add_bench("bench-detect",
                             "Detection-rate experiment with and without the MT",
                             detect_flags);
    auto* localize = add_bench("bench-localize",
                               "Frame-offset localization experiment", localize_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*gen) {
        SyntheticSpec spec = parse_spec_json(gen_spec);
        if (gen_seed) spec.seed = *gen_seed;
        const VideoCube cube = generate_synthetic(spec);
        write_cube(cube, gen_out);
        nlohmann::json j;
        j["written"] = gen_out;
        j["width"] = cube.width;
        j["height"] = cube.height;
        j["frames"] = cube.num_frames;
        j["fps"] = cube.frame_rate;
        j["seed"] = spec.seed;
        emit(j.dump(2), "");
    } else if (*mt) {
        const VideoCube cube = read_cube(mt_query);
        std::size_t col = 0, row = 0;
        if (std::sscanf(mt_pixel.c_str(), "%zu,%zu", &col, &row) != 2 ||
            col >= cube.width || row >= cube.height) {
            throw std::runtime_error("--pixel must be COL,ROW inside the cube");
        }
        MTParams params =
            MTParams::defaults_for(cube.frame_rate, cube.num_frames, mt_flags.n_tau);
        if (mt_flags.omega_low) params.omega_low = *mt_flags.omega_low;
        if (mt_flags.omega_high) params.omega_high = *mt_flags.omega_high;
        const MTStream stream = mellin_transform(cube.pixel_stream(row, col), params);
        std::ostringstream csv;
        csv << "tau,omega_hz,value\n";
        for (std::size_t j = 0; j < stream.values.size(); ++j) {
            const double tau = params.delta_tau() * static_cast<double>(j);
            csv << tau << ',' << params.omega_low * std::exp(tau) << ','
                << stream.values[j] << '\n';
        }
        emit(csv.str(), mt_out);
    } else if (*xc) {
        const VideoCube query = subtract_temporal_mean(read_cube(xc_query));
        const VideoCube reference = subtract_temporal_mean(read_cube(xc_ref));
        const CorrelationVolume vol = correlate_cubes(query, reference);
        const AggregateSignal agg = aggregate(
            vol, xc_flags.method == "power" ? AggregationMethod::power
                                            : AggregationMethod::peak);
        std::ostringstream csv;
        csv << "lag,value\n";
        for (std::size_t i = 0; i < agg.values.size(); ++i) {
            csv << agg.lag_at(i) << ',' << agg.values[i] << '\n';
        }
        emit(csv.str(), xc_out);
    } else if (*est) {
        const VideoCube query = read_cube(est_query);
        const VideoCube reference = read_cube(est_ref);
        const ScaleEstimate result = estimate_scale(query, reference, make_config(est_flags));
        if (est_csv) {
            std::ostringstream csv;
            csv << "tau_shift,alpha,score,method,matched\n"
                << result.tau_shift << ',' << result.alpha << ',' << result.score << ','
                << (result.method == AggregationMethod::power ? "power" : "peak") << ','
                << (result.matched ? 1 : 0);
            emit(csv.str(), est_out);
        } else {
            nlohmann::json j;
            j["tau_shift"] = result.tau_shift;
            j["alpha"] = result.alpha;
            j["score"] = result.score;
            j["method"] = result.method == AggregationMethod::power ? "power" : "peak";
            j["matched"] = result.matched;
            emit(j.dump(2), est_out);
        }
    } else if (*tsm) {
        const VideoCube query = read_cube(tsm_query);
        const VideoCube reference = read_cube(tsm_ref);
        MatchResult result = run_tsm(query, reference, make_config(tsm_flags));
        result.segment_index = 0;
        if (result.event_frame) result.absolute_frame = *result.event_frame;
        if (tsm_csv) {
            emit(match_csv_header() + "\n" + match_csv_row(result), tsm_out);
        } else {
            emit(to_json(result), tsm_out);
        }
    } else if (*search) {
        const VideoCube query = read_cube(search_query);
        const VideoCube database = read_cube(search_db);
        const auto matches = search_database(query, database, make_config(search_flags));
        if (search_csv) {
            std::ostringstream csv;
            csv << match_csv_header();
            for (const auto& m : matches) csv << '\n' << match_csv_row(m);
            emit(csv.str(), search_out);
        } else {
            emit(to_json(matches), search_out);
        }
    } else if (*cal) {
        const auto matched = read_score_file(cal_matched);
        const auto unmatched = read_score_file(cal_unmatched);
        const auto policy = cal_policy == "min-fp" ? ThresholdPolicy::min_false_positive
                                                   : ThresholdPolicy::min_false_negative;
        const double threshold = calibrate_threshold(matched, unmatched, policy);
        nlohmann::json j;
        j["threshold"] = threshold;
        j["policy"] = cal_policy;
        j["matched_count"] = matched.size();
        j["unmatched_count"] = unmatched.size();
        emit(j.dump(2), cal_out);
    } else {
        // bench-* subcommands share corpus construction and report output.
        const BenchFlags& flags = *sweep ? sweep_flags
                                 : *detect ? detect_flags
                                           : localize_flags;
        const auto clips =
            default_bench_clips(flags.clips, flags.seed, flags.frames, flags.size,
                                flags.size);
        TsmConfig config = make_config(flags.common);
        const std::filesystem::path out_dir = flags.out;
        std::filesystem::create_directories(out_dir);

        BenchReport report;
        if (*sweep) {
            report = run_scale_sweep(clips, default_sweep_speeds(), config);
            write_delta_vs_alpha_csv(report, out_dir / "delta_vs_alpha.csv");
        } else if (*detect) {
            report = run_detection_experiment(clips, default_detection_speeds(), config);
            write_score_distributions_csv(report, out_dir / "score_distributions.csv");
        } else {
            config.threshold = std::min(config.threshold, 0.3);
            report = run_localization_experiment(clips, {1.0, 2.0, 3.0, 4.0},
                                                 default_localization_placements(), config);
            write_frame_offsets_csv(report, out_dir / "frame_offsets.csv");
        }
        report.seed = flags.seed;
        {
            std::ofstream out(out_dir / "report.json");
            if (!out) {
                throw std::runtime_error("cannot write report under " + out_dir.string());
            }
            out << to_json(report) << "\n";
        }
        nlohmann::json j;
        j["experiment"] = report.experiment;
        j["seed"] = report.seed;
        j["records"] = report.records.size();
        j["report"] = (out_dir / "report.json").string();
        emit(j.dump(2), "");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
