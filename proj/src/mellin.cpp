#include "mtaer/mellin.hpp"

#include <algorithm>
#include <stdexcept>

#include "fft.hpp"

namespace mtaer {

MTParams MTParams::defaults_for(double sample_rate, std::size_t length, std::size_t n_tau) {
    MTParams p;
    p.omega_low = 2.0 * sample_rate / static_cast<double>(length);
    p.omega_high = sample_rate / 2.0;
    p.n_tau = n_tau;
    validate(p, sample_rate);
    return p;
}

void validate(const MTParams& params, double sample_rate) {
    if (!(params.omega_low > 0.0)) {
        throw std::invalid_argument("MTParams: omega_low must be positive");
    }
    if (!(params.omega_low < params.omega_high)) {
        throw std::invalid_argument("MTParams: omega_low must be below omega_high");
    }
    const double nyquist = sample_rate / 2.0;
    if (params.omega_high > nyquist * (1.0 + 1e-12)) {
        throw std::invalid_argument("MTParams: omega_high exceeds the stream's Nyquist rate");
    }
    if (params.n_tau < 16) {
        throw std::invalid_argument("MTParams: n_tau must be at least 16");
    }
}

Spectrum dft_magnitude(const PixelStream& stream) {
    validate(stream);
    const auto bins = detail::rfft(stream.samples);
    Spectrum spec;
    spec.bin_spacing = stream.sample_rate / static_cast<double>(stream.samples.size());
    spec.magnitudes.resize(bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
        spec.magnitudes[k] = std::abs(bins[k]);
    }
    return spec;
}

namespace {

// Shared core: spectrum -> normalized tau-grid stream.
void remap_to_tau_grid(const Spectrum& spec, const MTParams& params, double* out) {
    const std::size_t last_bin = spec.magnitudes.size() - 1;
    const double delta_tau = params.delta_tau();
    double max_value = 0.0;
    for (std::size_t j = 0; j < params.n_tau; ++j) {
        const double omega = params.omega_low * std::exp(delta_tau * static_cast<double>(j));
        double value = 0.0;
        if (omega <= params.omega_high * (1.0 + 1e-12)) {
            double pos = omega / spec.bin_spacing;
            if (pos <= static_cast<double>(last_bin)) {
                std::size_t k = static_cast<std::size_t>(pos);
                if (k >= last_bin) k = last_bin - 1;
                const double frac = pos - static_cast<double>(k);
                value = spec.magnitudes[k] +
                        frac * (spec.magnitudes[k + 1] - spec.magnitudes[k]);
            } else if (pos <= static_cast<double>(last_bin) + 1e-9) {
                value = spec.magnitudes[last_bin];
            }
        }
        out[j] = value;
        max_value = std::max(max_value, value);
    }
    if (max_value > 0.0) {
        const double inv = 1.0 / max_value;
        for (std::size_t j = 0; j < params.n_tau; ++j) out[j] *= inv;
    }
}

PixelStream centered(const PixelStream& stream) {
    PixelStream out = stream;
    double sum = 0.0;
    for (double v : out.samples) sum += v;
    const double mean = sum / static_cast<double>(out.samples.size());
    for (double& v : out.samples) v -= mean;
    return out;
}

}  // namespace

MTStream mellin_transform(const PixelStream& stream, const MTParams& params) {
    validate(stream);
    validate(params, stream.sample_rate);
    const Spectrum spec = dft_magnitude(centered(stream));
    MTStream out;
    out.params = params;
    out.values.resize(params.n_tau);
    remap_to_tau_grid(spec, params, out.values.data());
    return out;
}

MTCube mellin_cube(const VideoCube& cube, const MTParams& params) {
    validate(cube);
    validate(params, cube.frame_rate);
    MTCube out;
    out.width = cube.width;
    out.height = cube.height;
    out.params = params;
    out.values.resize(cube.pixels_per_frame() * params.n_tau);
    for (std::size_t row = 0; row < cube.height; ++row) {
        for (std::size_t col = 0; col < cube.width; ++col) {
            const std::size_t pixel = row * cube.width + col;
            MTStream s = mellin_transform(cube.pixel_stream(row, col), params);
            std::copy(s.values.begin(), s.values.end(),
                      out.values.begin() + static_cast<std::ptrdiff_t>(pixel * params.n_tau));
        }
    }
    return out;
}

}  // namespace mtaer
