#include "mtaer/correlator.hpp"

#include <algorithm>
#include <bit>
#include <complex>
#include <stdexcept>

#include "fft.hpp"

namespace mtaer {
namespace {

std::size_t next_pow2(std::size_t n) { return std::bit_ceil(n); }

// Core shared by both correlate_cubes overloads. Streams are fetched via
// the accessor so MTCubes (contiguous) and VideoCubes (strided) both work.
template <typename StreamAt>
CorrelationVolume correlate_volume(std::size_t width, std::size_t height,
                                   std::size_t n_query, std::size_t n_reference,
                                   SignalDomain domain, StreamAt&& stream_at) {
    CorrelationVolume vol;
    vol.width = width;
    vol.height = height;
    vol.lag_min = -(static_cast<long>(n_query) - 1);
    vol.num_lags = n_query + n_reference - 1;
    vol.domain = domain;
    vol.values.resize(width * height * vol.num_lags);
    std::vector<double> q_buf, r_buf;
    for (std::size_t p = 0; p < width * height; ++p) {
        stream_at(p, q_buf, r_buf);
        LagSeries c = xcorr_full(q_buf, r_buf);
        std::copy(c.values.begin(), c.values.end(),
                  vol.values.begin() + static_cast<std::ptrdiff_t>(p * vol.num_lags));
    }
    return vol;
}

}  // namespace

LagSeries xcorr_full(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("xcorr_full: both inputs need at least 2 samples");
    }
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t m = next_pow2(out_len);

    std::vector<double> a_pad(m, 0.0), b_pad(m, 0.0);
    std::copy(a.begin(), a.end(), a_pad.begin());
    std::copy(b.begin(), b.end(), b_pad.begin());
    auto fa = detail::rfft(a_pad);
    const auto fb = detail::rfft(b_pad);
    for (std::size_t k = 0; k < fa.size(); ++k) {
        fa[k] = std::conj(fa[k]) * fb[k];
    }
    const std::vector<double> circ = detail::irfft(fa, m);

    LagSeries out;
    out.lag_min = -(static_cast<long>(a.size()) - 1);
    out.values.resize(out_len);
    for (std::size_t i = 0; i < out_len; ++i) {
        const long lag = out.lag_min + static_cast<long>(i);
        const std::size_t idx = lag >= 0 ? static_cast<std::size_t>(lag)
                                         : m - static_cast<std::size_t>(-lag);
        out.values[i] = circ[idx];
    }
    return out;
}

CorrelationVolume correlate_cubes(const MTCube& query, const MTCube& reference) {
    if (query.width != reference.width || query.height != reference.height) {
        throw std::invalid_argument("correlate_cubes: spatial dimensions differ");
    }
    if (!(query.params == reference.params)) {
        throw std::invalid_argument("correlate_cubes: MT cubes must share one tau grid");
    }
    const std::size_t n = query.params.n_tau;
    return correlate_volume(query.width, query.height, n, n, SignalDomain::tau,
                            [&](std::size_t p, std::vector<double>& q, std::vector<double>& r) {
                                auto qs = query.stream(p);
                                auto rs = reference.stream(p);
                                q.assign(qs.begin(), qs.end());
                                r.assign(rs.begin(), rs.end());
                            });
}

CorrelationVolume correlate_cubes(const VideoCube& query, const VideoCube& reference) {
    validate(query);
    validate(reference);
    if (query.width != reference.width || query.height != reference.height) {
        throw std::invalid_argument("correlate_cubes: spatial dimensions differ");
    }
    const std::size_t stride = query.pixels_per_frame();
    return correlate_volume(
        query.width, query.height, query.num_frames, reference.num_frames,
        SignalDomain::frame,
        [&](std::size_t p, std::vector<double>& q, std::vector<double>& r) {
            q.resize(query.num_frames);
            for (std::size_t t = 0; t < query.num_frames; ++t) {
                q[t] = query.samples[p + t * stride];
            }
            r.resize(reference.num_frames);
            for (std::size_t t = 0; t < reference.num_frames; ++t) {
                r[t] = reference.samples[p + t * stride];
            }
        });
}

AggregateSignal aggregate_power(const CorrelationVolume& volume) {
    AggregateSignal out;
    out.lag_min = volume.lag_min;
    out.method = AggregationMethod::power;
    out.domain = volume.domain;
    out.values.assign(volume.num_lags, 0.0);
    for (std::size_t p = 0; p < volume.width * volume.height; ++p) {
        const auto c = volume.pixel(p);
        for (std::size_t i = 0; i < volume.num_lags; ++i) {
            out.values[i] += c[i];
        }
    }
    return out;
}

AggregateSignal aggregate_peak(const CorrelationVolume& volume) {
    AggregateSignal out;
    out.lag_min = volume.lag_min;
    out.method = AggregationMethod::peak;
    out.domain = volume.domain;
    const std::size_t pixels = volume.width * volume.height;
    out.values.assign(volume.pixel(0).begin(), volume.pixel(0).end());
    for (std::size_t p = 1; p < pixels; ++p) {
        const auto c = volume.pixel(p);
        for (std::size_t i = 0; i < volume.num_lags; ++i) {
            out.values[i] = std::max(out.values[i], c[i]);
        }
    }
    return out;
}

AggregateSignal aggregate(const CorrelationVolume& volume, AggregationMethod method) {
    return method == AggregationMethod::power ? aggregate_power(volume)
                                              : aggregate_peak(volume);
}

PeakReading peak_of(const AggregateSignal& signal, double query_auto_peak) {
    if (signal.values.empty()) {
        throw std::invalid_argument("peak_of: empty signal");
    }
    if (!(query_auto_peak > 0.0)) {
        throw std::invalid_argument("peak_of: query auto-correlation peak must be positive");
    }
    bool all_zero = true;
    std::size_t best = 0;
    for (std::size_t i = 0; i < signal.values.size(); ++i) {
        if (signal.values[i] != 0.0) all_zero = false;
        if (signal.values[i] > signal.values[best]) best = i;  // first max wins ties
    }
    if (all_zero) {
        return PeakReading{0, 0.0, 0.0};
    }
    PeakReading out;
    out.lag = signal.lag_at(best);
    out.amplitude = signal.values[best];
    out.normalized = out.amplitude / query_auto_peak;
    return out;
}

}  // namespace mtaer
