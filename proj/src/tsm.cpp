#include "mtaer/tsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mtaer {
namespace {

void check_same_extent(const VideoCube& a, const VideoCube& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument(
            "query and reference must have equal spatial dimensions "
            "(spatial registration is a precondition)");
    }
}

double aggregate_auto_peak(const MTCube& mt, AggregationMethod method) {
    const CorrelationVolume vol = correlate_cubes(mt, mt);
    const AggregateSignal agg = aggregate(vol, method);
    return *std::max_element(agg.values.begin(), agg.values.end());
}

double aggregate_auto_peak(const VideoCube& centered, AggregationMethod method) {
    const CorrelationVolume vol = correlate_cubes(centered, centered);
    const AggregateSignal agg = aggregate(vol, method);
    return *std::max_element(agg.values.begin(), agg.values.end());
}

VideoCube pad_frames(const VideoCube& cube, std::size_t num_frames) {
    VideoCube out = cube;
    out.num_frames = num_frames;
    out.samples.resize(out.sample_count(), 0.0);
    return out;
}

nlohmann::json result_json(const MatchResult& r) {
    nlohmann::json j;
    j["matched"] = r.matched;
    j["alpha"] = r.alpha;
    j["event_frame"] = r.event_frame ? nlohmann::json(*r.event_frame) : nlohmann::json();
    j["step1_score"] = r.step1_score;
    j["step2_score"] = r.step2_score ? nlohmann::json(*r.step2_score) : nlohmann::json();
    j["segment_index"] =
        r.segment_index ? nlohmann::json(*r.segment_index) : nlohmann::json();
    j["absolute_frame"] =
        r.absolute_frame ? nlohmann::json(*r.absolute_frame) : nlohmann::json();
    return j;
}

}  // namespace

MTParams resolve_mt_params(const TsmConfig& config, double frame_rate,
                           std::size_t query_frames) {
    MTParams p = MTParams::defaults_for(frame_rate, query_frames, config.n_tau);
    if (config.omega_low) p.omega_low = *config.omega_low;
    if (config.omega_high) p.omega_high = *config.omega_high;
    validate(p, frame_rate);
    return p;
}

ScaleEstimate estimate_scale(const VideoCube& query, const VideoCube& reference,
                             const TsmConfig& config) {
    check_same_extent(query, reference);
    const MTParams params = resolve_mt_params(config, query.frame_rate, query.num_frames);
    validate(params, reference.frame_rate);

    const MTCube query_mt = mellin_cube(query, params);
    const MTCube reference_mt = mellin_cube(reference, params);

    ScaleEstimate est;
    est.method = config.method;
    const double auto_peak = aggregate_auto_peak(query_mt, config.method);
    if (auto_peak <= 0.0) {
        // Dead query (all pixels flat): nothing to correlate against.
        est.matched = false;
        return est;
    }
    const CorrelationVolume vol = correlate_cubes(query_mt, reference_mt);
    const AggregateSignal agg = aggregate(vol, config.method);
    const PeakReading peak = peak_of(agg, auto_peak);

    est.tau_shift = static_cast<double>(peak.lag) * params.delta_tau();
    est.alpha = std::exp(-est.tau_shift);
    est.score = peak.normalized;
    est.matched = est.score >= config.threshold;
    return est;
}

LocalizationResult localize_event(const VideoCube& query_resampled,
                                  const VideoCube& reference, const TsmConfig& config) {
    check_same_extent(query_resampled, reference);
    VideoCube query_c = subtract_temporal_mean(query_resampled);
    VideoCube reference_c = subtract_temporal_mean(reference);
    if (reference_c.num_frames < query_c.num_frames) {
        // Boundary events: a short database segment is padded, not an error.
        reference_c = pad_frames(reference_c, query_c.num_frames);
    }

    LocalizationResult out;
    const double auto_peak = aggregate_auto_peak(query_c, config.method);
    if (auto_peak <= 0.0) {
        return out;
    }
    const CorrelationVolume vol = correlate_cubes(query_c, reference_c);
    const AggregateSignal agg = aggregate(vol, config.method);
    const PeakReading peak = peak_of(agg, auto_peak);
    out.event_frame = peak.lag;
    out.score = peak.normalized;
    return out;
}

MatchResult run_tsm(const VideoCube& query, const VideoCube& reference,
                    const TsmConfig& config) {
    const ScaleEstimate step1 = estimate_scale(query, reference, config);
    MatchResult result;
    result.alpha = step1.alpha;
    result.step1_score = step1.score;
    result.matched = step1.matched;
    if (!step1.matched) {
        return result;
    }
    const VideoCube aligned = resample_speed(query, step1.alpha);
    const LocalizationResult step2 = localize_event(aligned, reference, config);
    result.event_frame = step2.event_frame;
    result.step2_score = step2.score;
    return result;
}

SegmentPlan plan_segments(std::size_t t3, std::size_t t2, std::size_t t1) {
    if (t1 < 1 || t1 >= t2) {
        throw std::invalid_argument(
            "plan_segments: need 0 < T1 < T2 (overlap must leave room for progress)");
    }
    if (t2 > t3) {
        throw std::invalid_argument("plan_segments: window T2 exceeds database duration T3");
    }
    SegmentPlan plan;
    plan.t1 = t1;
    plan.t2 = t2;
    plan.t3 = t3;
    const std::size_t step = t2 - t1;
    for (std::size_t start = 0;; start += step) {
        plan.segments.emplace_back(start, std::min(start + t2, t3));
        if (start + t2 >= t3) break;
    }
    return plan;
}

std::vector<MatchResult> search_database(const VideoCube& query,
                                         const VideoCube& database,
                                         const TsmConfig& config) {
    check_same_extent(query, database);
    const std::size_t t3 = database.num_frames;
    const std::size_t t2 = std::min(config.t2_frames.value_or(t3), t3);
    const std::size_t t1 = config.t1_frames.value_or(static_cast<std::size_t>(
        std::ceil(static_cast<double>(query.num_frames) * config.max_scale)));

    SegmentPlan plan;
    if (t2 >= t3) {
        plan.t1 = t1;
        plan.t2 = t3;
        plan.t3 = t3;
        plan.segments.emplace_back(0, t3);
    } else {
        plan = plan_segments(t3, t2, t1);
    }

    std::vector<MatchResult> matches;
    for (std::size_t k = 0; k < plan.segments.size(); ++k) {
        const auto [begin, end] = plan.segments[k];
        const VideoCube segment = slice_frames(database, begin, end);
        MatchResult r = run_tsm(query, segment, config);
        if (!r.matched) continue;
        r.segment_index = k;
        r.absolute_frame = static_cast<long>(begin) + *r.event_frame;
        matches.push_back(std::move(r));
    }
    std::sort(matches.begin(), matches.end(), [](const MatchResult& a, const MatchResult& b) {
        if (a.step1_score != b.step1_score) return a.step1_score > b.step1_score;
        return a.segment_index < b.segment_index;
    });
    return matches;
}

double calibrate_threshold(const std::vector<double>& matched_scores,
                           const std::vector<double>& unmatched_scores,
                           ThresholdPolicy policy) {
    if (matched_scores.empty() || unmatched_scores.empty()) {
        throw std::invalid_argument("calibrate_threshold: score lists must be non-empty");
    }
    if (policy == ThresholdPolicy::min_false_positive) {
        const double top = *std::max_element(unmatched_scores.begin(), unmatched_scores.end());
        return std::nextafter(top, std::numeric_limits<double>::infinity());
    }
    return *std::min_element(matched_scores.begin(), matched_scores.end());
}

std::string to_json(const MatchResult& result, int indent) {
    return result_json(result).dump(indent);
}

std::string to_json(const std::vector<MatchResult>& results, int indent) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) j.push_back(result_json(r));
    return j.dump(indent);
}

}  // namespace mtaer
