#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mtaer::detail {
namespace {

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is. Plans are cached per transform size, created with
// FFTW_UNALIGNED so they apply to any caller buffer, and FFTW_ESTIMATE so
// the chosen algorithm (and hence rounding) is deterministic across runs.
class PlanCache {
  public:
    fftw_plan r2c(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = r2c_.find(n);
        if (it != r2c_.end()) return it->second;
        std::vector<double> in(n);
        std::vector<std::complex<double>> out(n / 2 + 1);
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                              reinterpret_cast<fftw_complex*>(out.data()),
                                              FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw r2c plan creation failed");
        r2c_.emplace(n, plan);
        return plan;
    }

    fftw_plan c2r(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = c2r_.find(n);
        if (it != c2r_.end()) return it->second;
        std::vector<std::complex<double>> in(n / 2 + 1);
        std::vector<double> out(n);
        fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                              reinterpret_cast<fftw_complex*>(in.data()),
                                              out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw c2r plan creation failed");
        c2r_.emplace(n, plan);
        return plan;
    }

  private:
    std::mutex mutex_;
    std::unordered_map<std::size_t, fftw_plan> r2c_;
    std::unordered_map<std::size_t, fftw_plan> c2r_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> input) {
    const std::size_t n = input.size();
    if (n == 0) throw std::invalid_argument("rfft: empty input");
    fftw_plan plan = cache().r2c(n);
    std::vector<double> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n) {
    if (n == 0) throw std::invalid_argument("irfft: empty output requested");
    if (spectrum.size() != n / 2 + 1) {
        throw std::invalid_argument("irfft: spectrum size does not match signal length");
    }
    fftw_plan plan = cache().c2r(n);
    // c2r may scribble on its input, so hand it a copy.
    std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace mtaer::detail
