#include "mtaer/video_cube.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mtaer {

PixelStream VideoCube::pixel_stream(std::size_t row, std::size_t col) const {
    PixelStream out;
    out.sample_rate = frame_rate;
    out.samples.resize(num_frames);
    const std::size_t stride = pixels_per_frame();
    const std::size_t base = row * width + col;
    for (std::size_t t = 0; t < num_frames; ++t) {
        out.samples[t] = samples[base + t * stride];
    }
    return out;
}

void validate(const VideoCube& cube) {
    if (cube.width < 1 || cube.height < 1) {
        throw std::invalid_argument("VideoCube: width and height must be >= 1");
    }
    if (cube.num_frames < 2) {
        throw std::invalid_argument("VideoCube: at least 2 frames required");
    }
    if (!(cube.frame_rate > 0.0) || !std::isfinite(cube.frame_rate)) {
        throw std::invalid_argument("VideoCube: frame_rate must be positive and finite");
    }
    if (cube.samples.size() != cube.sample_count()) {
        throw std::invalid_argument(
            "VideoCube: sample count mismatch, expected " +
            std::to_string(cube.sample_count()) + " got " +
            std::to_string(cube.samples.size()));
    }
    for (double v : cube.samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("VideoCube: non-finite sample");
        }
    }
}

void validate(const PixelStream& stream) {
    if (stream.samples.size() < 2) {
        throw std::invalid_argument("PixelStream: at least 2 samples required");
    }
    if (!(stream.sample_rate > 0.0) || !std::isfinite(stream.sample_rate)) {
        throw std::invalid_argument("PixelStream: sample_rate must be positive and finite");
    }
    for (double v : stream.samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("PixelStream: non-finite sample");
        }
    }
}

VideoCube subtract_temporal_mean(const VideoCube& cube) {
    validate(cube);
    VideoCube out = cube;
    const std::size_t stride = cube.pixels_per_frame();
    const double n = static_cast<double>(cube.num_frames);
    for (std::size_t p = 0; p < stride; ++p) {
        double sum = 0.0;
        for (std::size_t t = 0; t < cube.num_frames; ++t) {
            sum += cube.samples[p + t * stride];
        }
        const double mean = sum / n;
        for (std::size_t t = 0; t < cube.num_frames; ++t) {
            out.samples[p + t * stride] = cube.samples[p + t * stride] - mean;
        }
    }
    return out;
}

VideoCube resample_speed(const VideoCube& cube, double s) {
    validate(cube);
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("resample_speed: s must be positive and finite");
    }
    const long long n_out = std::llround(s * static_cast<double>(cube.num_frames));
    if (n_out < 2) {
        throw std::invalid_argument("resample_speed: output would have fewer than 2 frames");
    }

    VideoCube out;
    out.width = cube.width;
    out.height = cube.height;
    out.num_frames = static_cast<std::size_t>(n_out);
    out.frame_rate = cube.frame_rate;
    out.samples.resize(out.sample_count());

    const std::size_t stride = cube.pixels_per_frame();
    const std::size_t last = cube.num_frames - 1;
    const double ratio = static_cast<double>(last) /
                         static_cast<double>(out.num_frames - 1);
    for (std::size_t tp = 0; tp < out.num_frames; ++tp) {
        double t = static_cast<double>(tp) * ratio;
        if (t > static_cast<double>(last)) t = static_cast<double>(last);
        std::size_t i0 = static_cast<std::size_t>(t);
        double frac = t - static_cast<double>(i0);
        if (i0 >= last) {
            i0 = last;
            frac = 0.0;
        }
        const double* f0 = cube.samples.data() + i0 * stride;
        double* dst = out.samples.data() + tp * stride;
        if (frac == 0.0) {
            for (std::size_t p = 0; p < stride; ++p) dst[p] = f0[p];
        } else {
            const double* f1 = f0 + stride;
            for (std::size_t p = 0; p < stride; ++p) {
                dst[p] = f0[p] + frac * (f1[p] - f0[p]);
            }
        }
    }
    return out;
}

VideoCube slice_frames(const VideoCube& cube, std::size_t begin, std::size_t end) {
    validate(cube);
    if (begin >= end || end > cube.num_frames) {
        throw std::invalid_argument("slice_frames: invalid frame range");
    }
    VideoCube out;
    out.width = cube.width;
    out.height = cube.height;
    out.num_frames = end - begin;
    out.frame_rate = cube.frame_rate;
    const std::size_t stride = cube.pixels_per_frame();
    out.samples.assign(cube.samples.begin() + static_cast<std::ptrdiff_t>(begin * stride),
                       cube.samples.begin() + static_cast<std::ptrdiff_t>(end * stride));
    return out;
}

}  // namespace mtaer
