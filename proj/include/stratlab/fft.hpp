#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "stratlab/common.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

/// Complex-to-complex 3-D FFT pair for one grid shape.  Forward carries the
/// 1/(n1*n2*n3) normalization, backward is plain summation, so a constant
/// physical field has its whole spectrum in the DC bin.
class FftPlan {
public:
    explicit FftPlan(const FourierGrid& g) : n_(g.size()) {
        buf_ = fftw_alloc_complex(n_);
        fwd_ = fftw_plan_dft_3d(g.n1(), g.n2(), g.n3(), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_3d(g.n1(), g.n2(), g.n3(), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlan() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void forward(const cplx* in, cplx* out) {
        std::lock_guard<std::mutex> lock(mu_);
        auto* b = reinterpret_cast<cplx*>(buf_);
        for (std::size_t i = 0; i < n_; ++i) b[i] = in[i];
        fftw_execute(fwd_);
        const double s = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = b[i] * s;
    }

    void backward(const cplx* in, cplx* out) {
        std::lock_guard<std::mutex> lock(mu_);
        auto* b = reinterpret_cast<cplx*>(buf_);
        for (std::size_t i = 0; i < n_; ++i) b[i] = in[i];
        fftw_execute(bwd_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = b[i];
    }

private:
    std::size_t n_;
    fftw_complex* buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
    std::mutex mu_;
};

/// Shared plan per grid shape.  FFTW planning is not thread-safe, so plan
/// creation is serialized; execution through the per-plan buffer is locked.
inline FftPlan& fft_plan_for(const FourierGrid& g) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(g.n1(), g.n2(), g.n3());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<FftPlan>(g)).first;
    return *it->second;
}

}  // namespace stratlab
