#include "mtaer/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rng.hpp"

namespace mtaer {
namespace {

double modulation_at(const SyntheticSpec& spec, double t) {
    if (!spec.modulation_freq) return 1.0;
    const double two_pi = 2.0 * std::numbers::pi;
    if (!spec.modulation_freq2) {
        const double d1 = spec.modulation_depth.value_or(0.5);
        return 0.5 + d1 * std::sin(two_pi * *spec.modulation_freq * t);
    }
    const double d1 = spec.modulation_depth.value_or(0.25);
    const double d2 = spec.modulation_depth2.value_or(0.25);
    return 0.5 + d1 * std::sin(two_pi * *spec.modulation_freq * t) +
           d2 * std::sin(two_pi * *spec.modulation_freq2 * t);
}

}  // namespace

VideoCube generate_synthetic(const SyntheticSpec& spec) {
    if (spec.width < 1 || spec.height < 1) {
        throw std::invalid_argument("generate_synthetic: empty scene");
    }
    if (spec.num_frames < 2) {
        throw std::invalid_argument("generate_synthetic: at least 2 frames required");
    }
    if (!(spec.frame_rate > 0.0)) {
        throw std::invalid_argument("generate_synthetic: frame_rate must be positive");
    }
    if (!(spec.size > 0.0)) {
        throw std::invalid_argument("generate_synthetic: object size must be positive");
    }
    if (spec.noise_sigma < 0.0) {
        throw std::invalid_argument("generate_synthetic: noise sigma must be >= 0");
    }
    if (spec.modulation_freq && !(*spec.modulation_freq >= 0.0)) {
        throw std::invalid_argument("generate_synthetic: modulation frequency must be >= 0");
    }
    const double d1 = spec.modulation_depth.value_or(spec.modulation_freq2 ? 0.25 : 0.5);
    const double d2 = spec.modulation_freq2 ? spec.modulation_depth2.value_or(0.25) : 0.0;
    if (d1 < 0.0 || d2 < 0.0 || d1 + d2 > 0.5 + 1e-12) {
        throw std::invalid_argument(
            "generate_synthetic: modulation depths must be nonnegative with sum <= 0.5");
    }

    VideoCube cube;
    cube.width = spec.width;
    cube.height = spec.height;
    cube.num_frames = spec.num_frames;
    cube.frame_rate = spec.frame_rate;
    cube.samples.assign(cube.sample_count(), 0.0);

    // Rectangle edges are antialiased with the pixel's linear coverage so a
    // subpixel drift produces a smooth ramp instead of on/off flicker.
    auto coverage_1d = [](double d, double half) {
        return std::clamp(0.5 + half - std::abs(d), 0.0, 1.0);
    };
    const double inv_two_sigma_sq = 1.0 / (2.0 * spec.size * spec.size);
    for (std::size_t t = 0; t < spec.num_frames; ++t) {
        const double time = static_cast<double>(t);
        const double cx = spec.start_x + spec.velocity_x * time;
        const double cy = spec.start_y + spec.velocity_y * time;
        const double amp = modulation_at(spec, time);
        double* frame = cube.samples.data() + t * cube.pixels_per_frame();
        for (std::size_t y = 0; y < spec.height; ++y) {
            for (std::size_t x = 0; x < spec.width; ++x) {
                const double dx = static_cast<double>(x) - cx;
                const double dy = static_cast<double>(y) - cy;
                double shape;
                if (spec.kind == ObjectKind::gaussian_blob) {
                    shape = std::exp(-(dx * dx + dy * dy) * inv_two_sigma_sq);
                } else {
                    shape = coverage_1d(dx, spec.size) * coverage_1d(dy, spec.size);
                }
                if (shape != 0.0) {
                    frame[y * spec.width + x] = amp * shape;
                }
            }
        }
    }

    if (spec.noise_sigma > 0.0) {
        detail::Rng rng(spec.seed);
        for (double& v : cube.samples) {
            v = std::clamp(v + spec.noise_sigma * rng.gaussian(), 0.0, 1.0);
        }
    }
    return cube;
}

}  // namespace mtaer
