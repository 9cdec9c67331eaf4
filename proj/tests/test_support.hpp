#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <unistd.h>

#include "mtaer/video_cube.hpp"

namespace test_support {

// Unique scratch directory, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("mtaer_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline mtaer::VideoCube random_cube(std::size_t width, std::size_t height,
                                    std::size_t frames, std::uint64_t seed,
                                    double frame_rate = 30.0) {
    mtaer::VideoCube cube;
    cube.width = width;
    cube.height = height;
    cube.num_frames = frames;
    cube.frame_rate = frame_rate;
    cube.samples.resize(cube.sample_count());
    std::mt19937_64 rng(seed);
    for (double& v : cube.samples) v = uniform01(rng);
    return cube;
}

// Smooth analytically scalable test signal: Gaussian-windowed tones.
// f(t) = sum_i a_i exp(-(t - c_i)^2 / (2 w_i^2)) sin(2 pi f_i t). Sampling
// the dilated signal f(t / stretch) at the same rate gives the exact
// continuous-time speed change (no resampling interpolation).
inline double gauss_tones(double t) {
    struct Component {
        double a, c, w, f;
    };
    static constexpr Component parts[] = {
        {1.0, 5.0, 1.0, 1.1}, {0.8, 6.5, 0.8, 2.3}, {0.6, 4.5, 0.7, 3.7}};
    double v = 0.0;
    for (const auto& p : parts) {
        const double d = (t - p.c) / p.w;
        v += p.a * std::exp(-0.5 * d * d) * std::sin(2.0 * std::numbers::pi * p.f * t);
    }
    return v;
}

inline mtaer::PixelStream sampled_gauss_tones(double sample_rate, std::size_t base_samples,
                                              double stretch) {
    mtaer::PixelStream s;
    s.sample_rate = sample_rate;
    const std::size_t n = static_cast<std::size_t>(
        std::llround(stretch * static_cast<double>(base_samples)));
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.samples[i] = gauss_tones(static_cast<double>(i) / sample_rate / stretch);
    }
    return s;
}

inline mtaer::VideoCube cube_from_stream(const mtaer::PixelStream& stream) {
    mtaer::VideoCube cube;
    cube.width = 1;
    cube.height = 1;
    cube.num_frames = stream.samples.size();
    cube.frame_rate = stream.sample_rate;
    cube.samples = stream.samples;
    return cube;
}

}  // namespace test_support
