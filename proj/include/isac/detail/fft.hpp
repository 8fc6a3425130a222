// SPDX-License-Identifier: Apache-2.0
//
// Thin thread-safe wrapper over FFTW for in-place forward 2-D transforms.

#ifndef ISAC_DETAIL_FFT_HPP
#define ISAC_DETAIL_FFT_HPP

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace isac::detail {

class FftPlanCache {
public:
    static FftPlanCache &instance() {
        static FftPlanCache cache;
        return cache;
    }

    FftPlanCache(const FftPlanCache &) = delete;
    FftPlanCache &operator=(const FftPlanCache &) = delete;

    /// Forward DFT (e^{-j...}) over a row-major rows x cols buffer, in place.
    void forward_2d(std::span<std::complex<double>> data, int rows, int cols) {
        if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
            throw std::logic_error("fft buffer size mismatch");
        fftw_plan plan = plan_for(rows, cols);
        auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
        fftw_execute_dft(plan, ptr, ptr);
    }

private:
    FftPlanCache() = default;
    ~FftPlanCache() {
        for (auto &[dims, plan] : plans_) fftw_destroy_plan(plan);
    }

    // FFTW planning is not thread-safe; execution with new-array functions is.
    fftw_plan plan_for(int rows, int cols) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(rows, cols);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(rows) * cols);
        auto *ptr = reinterpret_cast<fftw_complex *>(scratch.data());
        fftw_plan plan = fftw_plan_dft_2d(rows, cols, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline void fft_forward_2d(std::span<std::complex<double>> data, int rows, int cols) {
    FftPlanCache::instance().forward_2d(data, rows, cols);
}

} // namespace isac::detail

#endif // ISAC_DETAIL_FFT_HPP
