#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtaer/mellin.hpp"
#include "mtaer/video_cube.hpp"

namespace mtaer {

enum class AggregationMethod { power, peak };
enum class SignalDomain { tau, frame };

/// Values on an integer lag axis lag_min .. lag_min + size - 1.
struct LagSeries {
    long lag_min = 0;
    std::vector<double> values;

    long lag_max() const { return lag_min + static_cast<long>(values.size()) - 1; }
    long lag_at(std::size_t i) const { return lag_min + static_cast<long>(i); }
};

/// Per-pixel temporal cross-correlation c(x, y, lag), pixel-major storage.
/// Every pixel shares the lag axis -(N_query - 1) .. +(N_reference - 1).
struct CorrelationVolume {
    std::size_t width = 0;
    std::size_t height = 0;
    long lag_min = 0;
    std::size_t num_lags = 0;
    SignalDomain domain = SignalDomain::frame;
    std::vector<double> values;

    std::span<const double> pixel(std::size_t p) const {
        return {values.data() + p * num_lags, num_lags};
    }
};

/// Frame-level reduction of a correlation volume.
struct AggregateSignal {
    long lag_min = 0;
    std::vector<double> values;
    AggregationMethod method = AggregationMethod::power;
    SignalDomain domain = SignalDomain::frame;

    long lag_at(std::size_t i) const { return lag_min + static_cast<long>(i); }
};

/// Global maximum of an aggregate signal, with its score relative to the
/// query auto-correlation peak under the same method.
struct PeakReading {
    long lag = 0;
    double amplitude = 0.0;
    double normalized = 0.0;
};

/// Full cross-correlation values[l] = sum_j a[j] * b[j + l] for
/// l = -(len(a)-1) .. +(len(b)-1), computed via zero-padded FFTs.
LagSeries xcorr_full(std::span<const double> a, std::span<const double> b);

/// Per-pixel temporal correlation of two tau-domain cubes sharing one grid.
CorrelationVolume correlate_cubes(const MTCube& query, const MTCube& reference);

/// Per-pixel temporal correlation of two frame-domain cubes. Callers are
/// expected to pass centered (mean-subtracted) cubes.
CorrelationVolume correlate_cubes(const VideoCube& query, const VideoCube& reference);

/// S_power(lag): sum of c(x, y, lag) over all pixels, accumulated in
/// canonical row-major order so results are identical across runs.
AggregateSignal aggregate_power(const CorrelationVolume& volume);

/// S_peak(lag): maximum of c(x, y, lag) over all pixels.
AggregateSignal aggregate_peak(const CorrelationVolume& volume);

AggregateSignal aggregate(const CorrelationVolume& volume, AggregationMethod method);

/// Location and amplitude of the global maximum (ties break toward the
/// smallest lag), normalized by query_auto_peak. An all-zero signal reads
/// as "no correlation": lag 0, amplitude 0, score 0.
PeakReading peak_of(const AggregateSignal& signal, double query_auto_peak);

}  // namespace mtaer
