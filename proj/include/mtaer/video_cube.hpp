#pragma once

#include <cstddef>
#include <vector>

namespace mtaer {

/// One pixel's time series p(t): amplitude samples at a fixed rate.
struct PixelStream {
    std::vector<double> samples;
    double sample_rate = 0.0;  // samples per second

    bool operator==(const PixelStream&) const = default;
};

/// Grayscale frame stack p(x, y, t). Samples are frame-major, then
/// row-major within a frame. Raw cubes hold intensities in [0, 1];
/// centered cubes (after temporal mean subtraction) may be negative.
struct VideoCube {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t num_frames = 0;
    double frame_rate = 0.0;  // frames per second; metadata only
    std::vector<double> samples;

    std::size_t pixels_per_frame() const { return width * height; }
    std::size_t sample_count() const { return width * height * num_frames; }

    double& at(std::size_t frame, std::size_t row, std::size_t col) {
        return samples[frame * pixels_per_frame() + row * width + col];
    }
    double at(std::size_t frame, std::size_t row, std::size_t col) const {
        return samples[frame * pixels_per_frame() + row * width + col];
    }

    /// Extracts pixel (row, col) as a time series with sample_rate = frame_rate.
    PixelStream pixel_stream(std::size_t row, std::size_t col) const;

    bool operator==(const VideoCube&) const = default;
};

/// Throws std::invalid_argument when the cube violates its invariants
/// (dimensions, sample count, finiteness).
void validate(const VideoCube& cube);

/// Throws std::invalid_argument for streams shorter than 2 samples,
/// non-finite samples, or non-positive sample rates.
void validate(const PixelStream& stream);

/// Subtracts each pixel's own temporal mean. Idempotent up to rounding.
VideoCube subtract_temporal_mean(const VideoCube& cube);

/// Rescales the cube's duration by s: the output has round(s * num_frames)
/// frames sampled by linear interpolation between adjacent input frames,
/// endpoints mapping to endpoints. s > 1 plays the content slower (more
/// frames). frame_rate is unchanged. resample_speed(c, 1) == c exactly.
VideoCube resample_speed(const VideoCube& cube, double s);

/// Copies frames [begin, end) into a new cube.
VideoCube slice_frames(const VideoCube& cube, std::size_t begin, std::size_t end);

}  // namespace mtaer
