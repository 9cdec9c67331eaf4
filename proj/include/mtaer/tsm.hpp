#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtaer/correlator.hpp"
#include "mtaer/mellin.hpp"
#include "mtaer/video_cube.hpp"

namespace mtaer {

/// Free parameters of the two-step method. Unset MT cutoffs resolve to
/// the defaults for the query stream (see resolve_mt_params).
struct TsmConfig {
    std::optional<double> omega_low;
    std::optional<double> omega_high;
    std::size_t n_tau = 512;
    AggregationMethod method = AggregationMethod::peak;
    double threshold = 0.5;  // detection threshold on the normalized Step I score

    // Database segmentation. t2 defaults to the full reference; t1 defaults
    // to the query length scaled by max_scale, the largest slow-down factor
    // the search should still catch across a segment boundary.
    std::optional<std::size_t> t1_frames;
    std::optional<std::size_t> t2_frames;
    double max_scale = 4.0;
};

/// Step I output: the tau shift of the aggregate correlation peak and the
/// speed ratio it encodes. alpha = e^{-tau_shift} is the duration ratio of
/// the reference event to the query event (alpha > 1: the database event
/// plays slower than the query).
struct ScaleEstimate {
    double tau_shift = 0.0;
    double alpha = 1.0;
    double score = 0.0;  // normalized to the query MT auto-correlation peak
    AggregationMethod method = AggregationMethod::peak;
    bool matched = false;
};

/// Step II output: where the (speed-aligned) query starts in the reference.
struct LocalizationResult {
    long event_frame = 0;
    double score = 0.0;
};

/// Combined two-step result. event_frame is present only when matched.
struct MatchResult {
    bool matched = false;
    double alpha = 1.0;
    std::optional<long> event_frame;
    double step1_score = 0.0;
    std::optional<double> step2_score;
    std::optional<std::size_t> segment_index;
    std::optional<long> absolute_frame;
};

/// Overlapping database segmentation (T1 = query duration, T2 = window,
/// T3 = total duration, all in frames).
struct SegmentPlan {
    std::size_t t1 = 0;
    std::size_t t2 = 0;
    std::size_t t3 = 0;
    std::vector<std::pair<std::size_t, std::size_t>> segments;  // [start, end)
};

enum class ThresholdPolicy { min_false_positive, min_false_negative };

/// MT parameters shared by a query/reference pair: overrides from config,
/// otherwise omega_low anchored at the query's second DFT bin and
/// omega_high at Nyquist. Anchoring at the query keeps the DC block fixed
/// relative to the probe, so extreme slow-downs lose their low-frequency
/// content just as extreme speed-ups lose theirs to Nyquist.
MTParams resolve_mt_params(const TsmConfig& config, double frame_rate,
                           std::size_t query_frames);

/// Step I: Mellin-domain correlation. Detects the event regardless of
/// playback speed and reads the speed ratio off the peak position.
ScaleEstimate estimate_scale(const VideoCube& query, const VideoCube& reference,
                             const TsmConfig& config);

/// Step II: frame-domain correlation of mean-subtracted cubes. The query
/// must already be resampled to the reference speed. A reference shorter
/// than the query is zero-padded.
LocalizationResult localize_event(const VideoCube& query_resampled,
                                  const VideoCube& reference, const TsmConfig& config);

/// Runs Step I; when it matches, stretches the query by alpha and runs
/// Step II. Never reports an event frame for an unmatched pair.
MatchResult run_tsm(const VideoCube& query, const VideoCube& reference,
                    const TsmConfig& config);

/// Segments [0, T3) into windows of length T2 starting at multiples of
/// (T2 - T1); generation stops with the first window reaching T3, clamped
/// to end there. Consecutive windows overlap by at least T1, so any
/// T1-length event lies fully inside some segment.
SegmentPlan plan_segments(std::size_t t3, std::size_t t2, std::size_t t1);

/// Runs the two-step method against every planned segment of the database.
/// Returns the matched segments only, with event frames translated to
/// absolute database frames, ordered by Step I score (then segment index).
std::vector<MatchResult> search_database(const VideoCube& query,
                                         const VideoCube& database,
                                         const TsmConfig& config);

/// min_false_positive: one ulp above the largest unmatched score, so only
/// strictly higher scores match. min_false_negative: the smallest matched
/// score (inclusive).
double calibrate_threshold(const std::vector<double>& matched_scores,
                           const std::vector<double>& unmatched_scores,
                           ThresholdPolicy policy);

/// JSON document for one result or a result list; schema in docs/formats.md.
std::string to_json(const MatchResult& result, int indent = 2);
std::string to_json(const std::vector<MatchResult>& results, int indent = 2);

}  // namespace mtaer
