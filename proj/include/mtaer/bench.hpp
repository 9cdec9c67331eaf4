#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtaer/synthetic.hpp"
#include "mtaer/tsm.hpp"

namespace mtaer {

/// Standard error percentage: |alpha_est - alpha_true| / alpha_true * 100.
double delta_error(double alpha_est, double alpha_true);

/// Five-number summary plus an equal-width histogram over [min, max].
struct DistributionSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::vector<std::size_t> histogram;
    double bin_width = 0.0;
    std::size_t count = 0;
};

/// Quartiles by linear interpolation between order statistics (inclusive
/// method). Throws std::invalid_argument on empty input or zero bins.
DistributionSummary summarize_distribution(const std::vector<double>& values,
                                           std::size_t bins);

struct SpeedDatabaseEntry {
    std::string clip_id;
    double speed = 1.0;
    std::filesystem::path path;
};

/// Index of a clips-times-speeds cube database on disk.
struct SpeedDatabaseManifest {
    std::uint64_t seed = 0;
    std::size_t clip_count = 0;
    std::vector<double> speeds;
    std::vector<SpeedDatabaseEntry> entries;
};

/// Generates every clip, resamples it at every speed, and writes the cubes
/// under out_dir along with manifest.json. Deterministic for a given seed:
/// clip seeds are derived from it, overriding the specs' own seeds.
SpeedDatabaseManifest build_speed_database(const std::vector<SyntheticSpec>& clips,
                                           const std::vector<double>& speeds,
                                           std::uint64_t seed,
                                           const std::filesystem::path& out_dir);

/// One pairing outcome. Speed-estimation fields are absent for records
/// produced by the without-MT baseline.
struct BenchRecord {
    std::string query_id;
    std::string reference_id;
    AggregationMethod method = AggregationMethod::peak;
    bool with_mt = true;
    double alpha_true = 1.0;
    std::optional<double> alpha_est;
    std::optional<double> delta_percent;
    double score = 0.0;
    bool matched_truth = false;
    bool matched_pred = false;
    std::optional<long> frame_offset;
};

struct SweepCurvePoint {
    double alpha_true = 1.0;
    AggregationMethod method = AggregationMethod::peak;
    DistributionSummary delta_summary;
};

struct DetectionStats {
    std::optional<double> detection_rate_percent;       // at the min-FP threshold
    std::optional<double> false_positive_rate_percent;  // at the min-FN threshold
    std::optional<double> threshold_min_fp;
    std::optional<double> threshold_min_fn;
    DistributionSummary matched_scores;
    DistributionSummary unmatched_scores;
    double separation = 0.0;  // min matched - max unmatched
};

struct LocalizationCurvePoint {
    double scale_factor = 1.0;
    DistributionSummary offsets;
    long max_offset = 0;
};

struct BenchReport {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<BenchRecord> records;
    std::vector<SweepCurvePoint> sweep_curves;            // scale-sweep
    std::map<std::string, DetectionStats> detection;      // "with_mt" / "without_mt"
    std::vector<LocalizationCurvePoint> localization_curves;
    std::optional<long> max_frame_offset;
};

/// Where a rescaled event gets embedded for a localization trial.
struct Placement {
    std::size_t event_frame = 0;
    std::size_t reference_frames = 0;
};

/// Seeded default corpus: antialiased rectangles with two-tone intensity
/// modulation. Tone ratios follow a log-spaced ladder and depths balance
/// the two lines' correlation mass, so every pair of clips stays apart in
/// the Mellin domain. 240 frames give the ladder enough integer cycle
/// slots for ten well-separated clips.
std::vector<SyntheticSpec> default_bench_clips(std::size_t count, std::uint64_t seed,
                                               std::size_t frames = 240,
                                               std::size_t width = 32,
                                               std::size_t height = 32);

/// Log-spaced speed ladder over [0.05, 40], straddling the reliable band.
std::vector<double> default_sweep_speeds();

/// Five playback speeds for the detection experiment.
std::vector<double> default_detection_speeds();

/// Placements pairing event frames with 600- and 1200-frame references.
std::vector<Placement> default_localization_placements();

/// Estimates the speed ratio of every (clip, speed) resampling against the
/// original clip with BOTH aggregation methods and records delta errors.
BenchReport run_scale_sweep(const std::vector<SyntheticSpec>& clips,
                            const std::vector<double>& speeds, const TsmConfig& config);

/// Correlates every original clip against every database entry, with the
/// Mellin step and without it, calibrates both threshold policies per mode,
/// and reports detection / false-positive rates and score distributions.
BenchReport run_detection_experiment(const std::vector<SyntheticSpec>& clips,
                                     const std::vector<double>& speeds,
                                     const TsmConfig& config);

/// Embeds each rescaled clip at known frames inside blank references, runs
/// the full two-step method, and reports frame offsets per scale factor.
BenchReport run_localization_experiment(const std::vector<SyntheticSpec>& clips,
                                        const std::vector<double>& scale_factors,
                                        const std::vector<Placement>& placements,
                                        const TsmConfig& config);

std::string to_json(const BenchReport& report, int indent = 2);
std::string to_json(const SpeedDatabaseManifest& manifest, int indent = 2);

/// Plot-ready CSV exports, one per figure analog (see docs/formats.md).
void write_delta_vs_alpha_csv(const BenchReport& report, const std::filesystem::path& path);
void write_score_distributions_csv(const BenchReport& report,
                                   const std::filesystem::path& path);
void write_frame_offsets_csv(const BenchReport& report, const std::filesystem::path& path);

}  // namespace mtaer
