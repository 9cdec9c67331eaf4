#pragma once

#include <cstdint>
#include <optional>

#include "mtaer/video_cube.hpp"

namespace mtaer {

enum class ObjectKind { gaussian_blob, rectangle };

/// Seeded moving-object scene description. Identical spec + seed always
/// renders the identical cube.
struct SyntheticSpec {
    std::size_t width = 32;
    std::size_t height = 32;
    std::size_t num_frames = 150;
    double frame_rate = 30.0;

    ObjectKind kind = ObjectKind::gaussian_blob;
    double size = 2.5;       // blob sigma, or rectangle half-extent, in pixels
    double start_x = 16.0;   // object center at frame 0
    double start_y = 16.0;
    double velocity_x = 0.0;  // pixels per frame
    double velocity_y = 0.0;

    /// Optional sinusoidal intensity modulation, cycles per frame. A second
    /// tone gives the clip a scale-invariant spectral fingerprint; the
    /// depths shape the relative line heights. Depths must satisfy
    /// depth + depth2 <= 0.5 so intensities stay in [0, 1]; they default to
    /// 0.5 for one tone and 0.25 each for two.
    std::optional<double> modulation_freq;
    std::optional<double> modulation_freq2;
    std::optional<double> modulation_depth;
    std::optional<double> modulation_depth2;

    double noise_sigma = 0.0;  // additive Gaussian noise, clipped to [0, 1]
    std::uint64_t seed = 0;
};

/// Renders the spec. Object intensity is in [0, 1] before noise; noisy
/// samples are clipped back to [0, 1]. The object is clipped at the scene
/// borders. Throws std::invalid_argument for degenerate geometry.
VideoCube generate_synthetic(const SyntheticSpec& spec);

}  // namespace mtaer
