#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "mtaer/video_cube.hpp"

namespace mtaer {

/// One-sided DFT magnitude spectrum, bins 0..floor(N/2).
struct Spectrum {
    std::vector<double> magnitudes;
    double bin_spacing = 0.0;  // Hz per bin = sample_rate / N
};

/// Temporal Mellin transform parameters. The transform resamples the
/// magnitude spectrum onto a uniform grid in tau = ln(omega / omega_low),
/// so a playback-speed ratio between two signals becomes a tau shift.
struct MTParams {
    double omega_low = 0.0;   // low-frequency (DC block) cutoff, Hz
    double omega_high = 0.0;  // high-frequency cutoff, Hz
    std::size_t n_tau = 512;  // uniform tau samples

    double tau_max() const { return std::log(omega_high / omega_low); }
    double delta_tau() const { return tau_max() / static_cast<double>(n_tau - 1); }

    /// Defaults for a stream of the given length: omega_low at the second
    /// DFT bin (blocks DC and the slowest bin), omega_high at Nyquist.
    static MTParams defaults_for(double sample_rate, std::size_t length,
                                 std::size_t n_tau = 512);

    bool operator==(const MTParams&) const = default;
};

/// Throws std::invalid_argument unless 0 < omega_low < omega_high <=
/// Nyquist of sample_rate and n_tau >= 16.
void validate(const MTParams& params, double sample_rate);

/// Mellin-transformed signal on the uniform tau grid, max-normalized to 1
/// (all zeros for a dead pixel).
struct MTStream {
    std::vector<double> values;
    MTParams params;
};

/// Per-pixel MTStreams sharing one tau grid, pixel-major storage.
struct MTCube {
    std::size_t width = 0;
    std::size_t height = 0;
    MTParams params;
    std::vector<double> values;  // pixel * n_tau + j

    std::span<const double> stream(std::size_t pixel) const {
        return {values.data() + pixel * params.n_tau, params.n_tau};
    }
};

/// Magnitude of the DFT: |sum_n s[n] e^{-i 2 pi k n / N}| for k = 0..N/2.
Spectrum dft_magnitude(const PixelStream& stream);

/// Subtracts the temporal mean, takes the DFT magnitude, maps it onto the
/// exponential frequency ladder omega_low * e^{tau_j} by linear
/// interpolation between DFT bins (zero above omega_high or past the last
/// bin), and normalizes the result to a maximum of 1.
MTStream mellin_transform(const PixelStream& stream, const MTParams& params);

/// Applies mellin_transform to every pixel; all streams share the grid.
MTCube mellin_cube(const VideoCube& cube, const MTParams& params);

}  // namespace mtaer
