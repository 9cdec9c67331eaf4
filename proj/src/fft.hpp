#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mtaer::detail {

/// Unnormalized forward DFT of a real signal; returns the one-sided
/// spectrum, bins 0..floor(N/2). Any N >= 1. Thread-safe.
std::vector<std::complex<double>> rfft(std::span<const double> input);

/// Inverse of rfft: reconstructs a real signal of length n from its
/// one-sided spectrum (applies the 1/n normalization). Thread-safe.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

}  // namespace mtaer::detail
