#include "mtaer/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "mtaer/cube_io.hpp"
#include "rng.hpp"

namespace mtaer {
namespace {

const char* method_name(AggregationMethod m) {
    return m == AggregationMethod::power ? "power" : "peak";
}

std::string clip_id(std::size_t index) {
    std::ostringstream s;
    s << "clip" << (index < 10 ? "0" : "") << index;
    return s.str();
}

std::string entry_id(std::size_t clip_index, double speed) {
    std::ostringstream s;
    s << clip_id(clip_index) << "@x" << speed;
    return s.str();
}

double max_of(const AggregateSignal& agg) {
    return *std::max_element(agg.values.begin(), agg.values.end());
}

// Step I reading for a precomputed MT pair.
struct Step1Reading {
    double alpha = 1.0;
    double score = 0.0;
};

Step1Reading step1_reading(const MTCube& query_mt, const MTCube& reference_mt,
                           AggregationMethod method, double query_auto_peak) {
    const CorrelationVolume vol = correlate_cubes(query_mt, reference_mt);
    const AggregateSignal agg = aggregate(vol, method);
    const PeakReading peak = peak_of(agg, query_auto_peak);
    const double tau_shift =
        static_cast<double>(peak.lag) * query_mt.params.delta_tau();
    return {std::exp(-tau_shift), peak.normalized};
}

// Frame-domain score of a centered pair (the without-MT baseline).
double frame_score(const VideoCube& query_centered, const VideoCube& reference_centered,
                   AggregationMethod method, double query_auto_peak) {
    const CorrelationVolume vol = correlate_cubes(query_centered, reference_centered);
    const AggregateSignal agg = aggregate(vol, method);
    return peak_of(agg, query_auto_peak).normalized;
}

nlohmann::json summary_json(const DistributionSummary& s) {
    return {{"min", s.min},     {"q1", s.q1},
            {"median", s.median}, {"q3", s.q3},
            {"max", s.max},     {"histogram", s.histogram},
            {"bin_width", s.bin_width}, {"count", s.count}};
}

nlohmann::json record_json(const BenchRecord& r) {
    nlohmann::json j;
    j["query_id"] = r.query_id;
    j["reference_id"] = r.reference_id;
    j["method"] = method_name(r.method);
    j["with_mt"] = r.with_mt;
    j["alpha_true"] = r.alpha_true;
    j["alpha_est"] = r.alpha_est ? nlohmann::json(*r.alpha_est) : nlohmann::json();
    j["delta_percent"] =
        r.delta_percent ? nlohmann::json(*r.delta_percent) : nlohmann::json();
    j["score"] = r.score;
    j["matched_truth"] = r.matched_truth;
    j["matched_pred"] = r.matched_pred;
    j["frame_offset"] =
        r.frame_offset ? nlohmann::json(*r.frame_offset) : nlohmann::json();
    return j;
}

void require_open(const std::ofstream& out, const std::filesystem::path& path) {
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

}  // namespace

double delta_error(double alpha_est, double alpha_true) {
    if (!(alpha_true > 0.0)) {
        throw std::invalid_argument("delta_error: alpha_true must be positive");
    }
    if (!(alpha_est > 0.0)) {
        throw std::invalid_argument("delta_error: alpha_est must be positive");
    }
    return std::abs(alpha_est - alpha_true) / alpha_true * 100.0;
}

DistributionSummary summarize_distribution(const std::vector<double>& values,
                                           std::size_t bins) {
    if (values.empty()) {
        throw std::invalid_argument("summarize_distribution: empty input");
    }
    if (bins < 1) {
        throw std::invalid_argument("summarize_distribution: need at least one bin");
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    auto quantile = [&sorted](double q) {
        const double h = q * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(lo);
        if (lo + 1 >= sorted.size()) return sorted.back();
        return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
    };

    DistributionSummary s;
    s.count = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.histogram.assign(bins, 0);
    const double span = s.max - s.min;
    s.bin_width = span / static_cast<double>(bins);
    for (double v : sorted) {
        std::size_t b = 0;
        if (span > 0.0) {
            b = static_cast<std::size_t>((v - s.min) / span * static_cast<double>(bins));
            if (b >= bins) b = bins - 1;  // v == max lands in the top bin
        }
        ++s.histogram[b];
    }
    return s;
}

SpeedDatabaseManifest build_speed_database(const std::vector<SyntheticSpec>& clips,
                                           const std::vector<double>& speeds,
                                           std::uint64_t seed,
                                           const std::filesystem::path& out_dir) {
    if (clips.empty() || speeds.empty()) {
        throw std::invalid_argument("build_speed_database: clips and speeds must be non-empty");
    }
    std::filesystem::create_directories(out_dir);

    SpeedDatabaseManifest manifest;
    manifest.seed = seed;
    manifest.clip_count = clips.size();
    manifest.speeds = speeds;
    for (std::size_t i = 0; i < clips.size(); ++i) {
        SyntheticSpec spec = clips[i];
        spec.seed = detail::splitmix64(seed ^ detail::splitmix64(i + 1));
        const VideoCube original = generate_synthetic(spec);
        for (double speed : speeds) {
            const VideoCube cube = speed == 1.0 ? original : resample_speed(original, speed);
            SpeedDatabaseEntry entry;
            entry.clip_id = clip_id(i);
            entry.speed = speed;
            std::ostringstream name;
            name << entry.clip_id << "_x" << speed << ".mtvc";
            entry.path = out_dir / name.str();
            write_cube(cube, entry.path);
            manifest.entries.push_back(std::move(entry));
        }
    }

    std::ofstream mf(out_dir / "manifest.json");
    require_open(mf, out_dir / "manifest.json");
    mf << to_json(manifest) << "\n";
    return manifest;
}

std::vector<SyntheticSpec> default_bench_clips(std::size_t count, std::uint64_t seed,
                                               std::size_t frames, std::size_t width,
                                               std::size_t height) {
    std::vector<SyntheticSpec> clips;
    clips.reserve(count);
    const double side = static_cast<double>(std::min(width, height));
    long previous_k2 = 0;
    for (std::size_t i = 0; i < count; ++i) {
        detail::Rng rng(detail::splitmix64(seed ^ detail::splitmix64(0xc11b5 + i)));
        SyntheticSpec spec;
        spec.width = width;
        spec.height = height;
        spec.num_frames = frames;
        spec.frame_rate = 30.0;

        // A static antialiased rectangle. Subpixel boundary coverage is a
        // pure per-pixel gain, which the MT normalization erases; a moving
        // boundary would instead hand grazed pixels a slow coverage ramp
        // whose below-cutoff energy piles up against the DC block and
        // anchors every correlation at lag zero. Motion robustness is
        // exercised separately (centroid tests, localization placements).
        spec.kind = ObjectKind::rectangle;
        spec.size = side * rng.uniform(0.22, 0.30);
        const double margin = spec.size + 1.0;
        spec.start_x = rng.uniform(margin, static_cast<double>(width - 1) - margin);
        spec.start_y = rng.uniform(margin, static_cast<double>(height - 1) - margin);
        spec.velocity_x = 0.0;
        spec.velocity_y = 0.0;

        // Two-tone modulation. Integer cycle counts over the clip keep the
        // spectral lines leakage-free, and the cycle count is preserved by
        // resampling, so resampled copies stay leakage-free too. The tone
        // ratio is the speed-invariant fingerprint; clips take a
        // deterministic log-spaced ratio ladder. Depths are split so both
        // lines carry comparable correlation mass on the tau grid (a line
        // at bin k spans ~1/k in tau, so depth grows like sqrt(k)).
        const double n = static_cast<double>(frames);
        const long k1 = std::max<long>(8, std::lround(0.05 * n));
        const long k2_cap = std::lround(0.17 * n);
        const double t = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1)
                                   : 0.5;
        const double ratio_top =
            std::min(4.5, static_cast<double>(k2_cap) / static_cast<double>(k1));
        const double ratio = 1.5 * std::pow(ratio_top / 1.5, t);
        long k2 = std::max(k1 + 3, std::lround(static_cast<double>(k1) * ratio));
        if (k2 <= previous_k2) k2 = previous_k2 + 1;  // rounding must not collide
        previous_k2 = k2;
        spec.modulation_freq = static_cast<double>(k1) / n;
        spec.modulation_freq2 = static_cast<double>(k2) / n;
        const double w1 = std::sqrt(static_cast<double>(k1));
        const double w2 = std::sqrt(static_cast<double>(k2));
        const double d1 = 0.5 * w1 / (w1 + w2) * rng.uniform(0.9, 1.1);
        spec.modulation_depth = d1;
        spec.modulation_depth2 = 0.5 - d1;

        // Clean background: off-path pixels stay dead instead of turning
        // into normalized noise streams that swamp the peak aggregation.
        spec.noise_sigma = 0.0;
        spec.seed = detail::splitmix64(seed ^ detail::splitmix64(0x5eed + i));
        clips.push_back(spec);
    }
    return clips;
}

std::vector<double> default_sweep_speeds() {
    return {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0};
}

std::vector<double> default_detection_speeds() { return {0.5, 0.75, 1.0, 1.5, 2.0}; }

std::vector<Placement> default_localization_placements() {
    return {{0, 1200}, {137, 1200}, {421, 1200}, {700, 1200}, {0, 600}, {90, 600}};
}

BenchReport run_scale_sweep(const std::vector<SyntheticSpec>& clips,
                            const std::vector<double>& speeds, const TsmConfig& config) {
    if (clips.empty() || speeds.empty()) {
        throw std::invalid_argument("run_scale_sweep: clips and speeds must be non-empty");
    }
    BenchReport report;
    report.experiment = "scale-sweep";

    constexpr AggregationMethod kMethods[] = {AggregationMethod::power,
                                              AggregationMethod::peak};
    for (std::size_t i = 0; i < clips.size(); ++i) {
        const VideoCube query = generate_synthetic(clips[i]);
        const MTParams params =
            resolve_mt_params(config, query.frame_rate, query.num_frames);
        const MTCube query_mt = mellin_cube(query, params);
        double auto_peak[2];
        for (auto method : kMethods) {
            auto_peak[static_cast<int>(method)] =
                max_of(aggregate(correlate_cubes(query_mt, query_mt), method));
        }
        for (double speed : speeds) {
            const VideoCube reference = resample_speed(query, speed);
            const MTCube reference_mt = mellin_cube(reference, params);
            const CorrelationVolume vol = correlate_cubes(query_mt, reference_mt);
            for (auto method : kMethods) {
                const AggregateSignal agg = aggregate(vol, method);
                const PeakReading peak = peak_of(agg, auto_peak[static_cast<int>(method)]);
                const double tau_shift =
                    static_cast<double>(peak.lag) * params.delta_tau();
                BenchRecord rec;
                rec.query_id = clip_id(i);
                rec.reference_id = entry_id(i, speed);
                rec.method = method;
                rec.with_mt = true;
                rec.alpha_true = speed;
                rec.alpha_est = std::exp(-tau_shift);
                rec.delta_percent = delta_error(*rec.alpha_est, speed);
                rec.score = peak.normalized;
                rec.matched_truth = true;
                rec.matched_pred = rec.score >= config.threshold;
                report.records.push_back(std::move(rec));
            }
        }
    }

    for (double speed : speeds) {
        for (auto method : kMethods) {
            std::vector<double> deltas;
            for (const auto& rec : report.records) {
                if (rec.alpha_true == speed && rec.method == method) {
                    deltas.push_back(*rec.delta_percent);
                }
            }
            SweepCurvePoint point;
            point.alpha_true = speed;
            point.method = method;
            point.delta_summary = summarize_distribution(deltas, 10);
            report.sweep_curves.push_back(std::move(point));
        }
    }
    return report;
}

BenchReport run_detection_experiment(const std::vector<SyntheticSpec>& clips,
                                     const std::vector<double>& speeds,
                                     const TsmConfig& config) {
    if (clips.empty() || speeds.empty()) {
        throw std::invalid_argument(
            "run_detection_experiment: clips and speeds must be non-empty");
    }
    BenchReport report;
    report.experiment = "detection";

    const std::size_t n = clips.size();
    std::vector<VideoCube> originals(n);
    for (std::size_t i = 0; i < n; ++i) originals[i] = generate_synthetic(clips[i]);

    // Queries share MT params when they share a frame count (the default
    // corpus does); reference MT cubes are cached per distinct params.
    std::vector<MTParams> params(n);
    std::vector<MTCube> query_mt(n);
    std::vector<VideoCube> query_centered(n);
    std::vector<double> auto_peak_mt(n), auto_peak_frame(n);
    for (std::size_t i = 0; i < n; ++i) {
        params[i] = resolve_mt_params(config, originals[i].frame_rate,
                                      originals[i].num_frames);
        query_mt[i] = mellin_cube(originals[i], params[i]);
        auto_peak_mt[i] =
            max_of(aggregate(correlate_cubes(query_mt[i], query_mt[i]), config.method));
        query_centered[i] = subtract_temporal_mean(originals[i]);
        auto_peak_frame[i] = max_of(aggregate(
            correlate_cubes(query_centered[i], query_centered[i]), config.method));
    }

    struct EntryCache {
        VideoCube centered;
        std::vector<std::pair<MTParams, MTCube>> mt;  // per distinct params
    };

    std::vector<double> mt_matched, mt_unmatched, raw_matched, raw_unmatched;
    for (std::size_t j = 0; j < n; ++j) {
        for (double speed : speeds) {
            const VideoCube entry =
                speed == 1.0 ? originals[j] : resample_speed(originals[j], speed);
            EntryCache cache;
            cache.centered = subtract_temporal_mean(entry);
            for (std::size_t i = 0; i < n; ++i) {
                const MTCube* entry_mt = nullptr;
                for (const auto& [p, cube] : cache.mt) {
                    if (p == params[i]) {
                        entry_mt = &cube;
                        break;
                    }
                }
                if (!entry_mt) {
                    cache.mt.emplace_back(params[i], mellin_cube(entry, params[i]));
                    entry_mt = &cache.mt.back().second;
                }

                const bool truth = i == j;
                const Step1Reading mt_read =
                    step1_reading(query_mt[i], *entry_mt, config.method, auto_peak_mt[i]);
                BenchRecord with;
                with.query_id = clip_id(i);
                with.reference_id = entry_id(j, speed);
                with.method = config.method;
                with.with_mt = true;
                with.alpha_true = speed;
                with.alpha_est = mt_read.alpha;
                with.delta_percent =
                    truth ? std::optional<double>(delta_error(mt_read.alpha, speed))
                          : std::nullopt;
                with.score = mt_read.score;
                with.matched_truth = truth;
                with.matched_pred = mt_read.score >= config.threshold;
                report.records.push_back(with);
                (truth ? mt_matched : mt_unmatched).push_back(mt_read.score);

                const double raw = frame_score(query_centered[i], cache.centered,
                                               config.method, auto_peak_frame[i]);
                BenchRecord without;
                without.query_id = clip_id(i);
                without.reference_id = entry_id(j, speed);
                without.method = config.method;
                without.with_mt = false;
                without.alpha_true = speed;
                without.score = raw;
                without.matched_truth = truth;
                without.matched_pred = raw >= config.threshold;
                report.records.push_back(without);
                (truth ? raw_matched : raw_unmatched).push_back(raw);
            }
        }
    }

    auto stats_for = [&config](const std::vector<double>& matched,
                               const std::vector<double>& unmatched) {
        DetectionStats st;
        if (!unmatched.empty()) {
            st.unmatched_scores = summarize_distribution(unmatched, 20);
            if (!matched.empty()) {
                st.threshold_min_fp = calibrate_threshold(matched, unmatched,
                                                          ThresholdPolicy::min_false_positive);
                st.threshold_min_fn = calibrate_threshold(matched, unmatched,
                                                          ThresholdPolicy::min_false_negative);
            } else {
                // Zero true matches: the min-FP threshold still exists.
                st.threshold_min_fp = std::nextafter(
                    *std::max_element(unmatched.begin(), unmatched.end()),
                    std::numeric_limits<double>::infinity());
            }
        }
        if (!matched.empty()) {
            st.matched_scores = summarize_distribution(matched, 20);
        }
        if (!matched.empty() && st.threshold_min_fp) {
            const auto detected = std::count_if(
                matched.begin(), matched.end(),
                [&](double s) { return s >= *st.threshold_min_fp; });
            st.detection_rate_percent = 100.0 * static_cast<double>(detected) /
                                        static_cast<double>(matched.size());
        }
        if (!unmatched.empty()) {
            // At the min-FN threshold when one exists, else at the
            // configured threshold (the zero-true-matches edge case).
            const double thr = st.threshold_min_fn.value_or(config.threshold);
            const auto fp = std::count_if(unmatched.begin(), unmatched.end(),
                                          [&](double s) { return s >= thr; });
            st.false_positive_rate_percent = 100.0 * static_cast<double>(fp) /
                                             static_cast<double>(unmatched.size());
        }
        if (!matched.empty() && !unmatched.empty()) {
            st.separation = *std::min_element(matched.begin(), matched.end()) -
                            *std::max_element(unmatched.begin(), unmatched.end());
        }
        return st;
    };
    report.detection["with_mt"] = stats_for(mt_matched, mt_unmatched);
    report.detection["without_mt"] = stats_for(raw_matched, raw_unmatched);
    return report;
}

BenchReport run_localization_experiment(const std::vector<SyntheticSpec>& clips,
                                        const std::vector<double>& scale_factors,
                                        const std::vector<Placement>& placements,
                                        const TsmConfig& config) {
    if (clips.empty() || scale_factors.empty() || placements.empty()) {
        throw std::invalid_argument(
            "run_localization_experiment: clips, scale factors and placements "
            "must be non-empty");
    }
    BenchReport report;
    report.experiment = "localization";

    std::map<double, std::vector<double>> offsets_by_scale;
    long max_offset = 0;
    bool any_offset = false;
    for (std::size_t i = 0; i < clips.size(); ++i) {
        const VideoCube query = generate_synthetic(clips[i]);
        for (double scale : scale_factors) {
            const VideoCube event = resample_speed(query, scale);
            for (const Placement& place : placements) {
                if (place.event_frame + event.num_frames > place.reference_frames) {
                    throw std::invalid_argument(
                        "run_localization_experiment: event does not fit the placement");
                }
                VideoCube reference;
                reference.width = query.width;
                reference.height = query.height;
                reference.num_frames = place.reference_frames;
                reference.frame_rate = query.frame_rate;
                reference.samples.assign(reference.sample_count(), 0.0);
                std::copy(event.samples.begin(), event.samples.end(),
                          reference.samples.begin() +
                              static_cast<std::ptrdiff_t>(place.event_frame *
                                                          reference.pixels_per_frame()));

                const MatchResult r = run_tsm(query, reference, config);
                BenchRecord rec;
                rec.query_id = clip_id(i);
                std::ostringstream ref_id;
                ref_id << clip_id(i) << "@x" << scale << "+f" << place.event_frame << "/"
                       << place.reference_frames;
                rec.reference_id = ref_id.str();
                rec.method = config.method;
                rec.with_mt = true;
                rec.alpha_true = scale;
                rec.alpha_est = r.alpha;
                rec.delta_percent = delta_error(r.alpha, scale);
                rec.score = r.step1_score;
                rec.matched_truth = true;
                rec.matched_pred = r.matched;
                if (r.matched && r.event_frame) {
                    const long offset =
                        std::abs(*r.event_frame - static_cast<long>(place.event_frame));
                    rec.frame_offset = offset;
                    offsets_by_scale[scale].push_back(static_cast<double>(offset));
                    max_offset = std::max(max_offset, offset);
                    any_offset = true;
                }
                report.records.push_back(std::move(rec));
            }
        }
    }

    for (const auto& [scale, offsets] : offsets_by_scale) {
        LocalizationCurvePoint point;
        point.scale_factor = scale;
        point.offsets = summarize_distribution(offsets, 6);
        point.max_offset = static_cast<long>(point.offsets.max);
        report.localization_curves.push_back(std::move(point));
    }
    if (any_offset) report.max_frame_offset = max_offset;
    return report;
}

std::string to_json(const BenchReport& report, int indent) {
    nlohmann::json j;
    j["experiment"] = report.experiment;
    j["seed"] = report.seed;
    if (!report.sweep_curves.empty()) {
        nlohmann::json curves = nlohmann::json::array();
        for (const auto& p : report.sweep_curves) {
            curves.push_back({{"alpha_true", p.alpha_true},
                              {"method", method_name(p.method)},
                              {"delta_summary", summary_json(p.delta_summary)}});
        }
        j["sweep_curves"] = curves;
    }
    if (!report.detection.empty()) {
        nlohmann::json modes;
        for (const auto& [mode, st] : report.detection) {
            nlohmann::json m;
            m["detection_rate_percent"] = st.detection_rate_percent
                                              ? nlohmann::json(*st.detection_rate_percent)
                                              : nlohmann::json();
            m["false_positive_rate_percent"] =
                st.false_positive_rate_percent
                    ? nlohmann::json(*st.false_positive_rate_percent)
                    : nlohmann::json();
            m["threshold_min_fp"] = st.threshold_min_fp
                                        ? nlohmann::json(*st.threshold_min_fp)
                                        : nlohmann::json();
            m["threshold_min_fn"] = st.threshold_min_fn
                                        ? nlohmann::json(*st.threshold_min_fn)
                                        : nlohmann::json();
            m["matched_scores"] = summary_json(st.matched_scores);
            m["unmatched_scores"] = summary_json(st.unmatched_scores);
            m["separation"] = st.separation;
            modes[mode] = m;
        }
        j["detection"] = modes;
    }
    if (!report.localization_curves.empty()) {
        nlohmann::json curves = nlohmann::json::array();
        for (const auto& p : report.localization_curves) {
            curves.push_back({{"scale_factor", p.scale_factor},
                              {"max_offset", p.max_offset},
                              {"offsets", summary_json(p.offsets)}});
        }
        j["localization_curves"] = curves;
        j["max_frame_offset"] = report.max_frame_offset
                                    ? nlohmann::json(*report.max_frame_offset)
                                    : nlohmann::json();
    }
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records) records.push_back(record_json(r));
    j["records"] = records;
    return j.dump(indent);
}

std::string to_json(const SpeedDatabaseManifest& manifest, int indent) {
    nlohmann::json j;
    j["seed"] = manifest.seed;
    j["clip_count"] = manifest.clip_count;
    j["speeds"] = manifest.speeds;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : manifest.entries) {
        entries.push_back(
            {{"clip_id", e.clip_id}, {"speed", e.speed}, {"path", e.path.string()}});
    }
    j["entries"] = entries;
    return j.dump(indent);
}

void write_delta_vs_alpha_csv(const BenchReport& report,
                              const std::filesystem::path& path) {
    std::ofstream out(path);
    require_open(out, path);
    out << "alpha_true,method,count,min,q1,median,q3,max\n";
    for (const auto& p : report.sweep_curves) {
        const auto& s = p.delta_summary;
        out << p.alpha_true << ',' << method_name(p.method) << ',' << s.count << ','
            << s.min << ',' << s.q1 << ',' << s.median << ',' << s.q3 << ',' << s.max
            << '\n';
    }
}

void write_score_distributions_csv(const BenchReport& report,
                                   const std::filesystem::path& path) {
    std::ofstream out(path);
    require_open(out, path);
    out << "mode,query_id,reference_id,matched_truth,score\n";
    for (const auto& r : report.records) {
        out << (r.with_mt ? "with_mt" : "without_mt") << ',' << r.query_id << ','
            << r.reference_id << ',' << (r.matched_truth ? 1 : 0) << ',' << r.score
            << '\n';
    }
}

void write_frame_offsets_csv(const BenchReport& report,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    require_open(out, path);
    out << "scale_factor,query_id,reference_id,frame_offset\n";
    for (const auto& r : report.records) {
        if (!r.frame_offset) continue;
        out << r.alpha_true << ',' << r.query_id << ',' << r.reference_id << ','
            << *r.frame_offset << '\n';
    }
}

}  // namespace mtaer
