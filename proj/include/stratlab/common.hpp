#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace stratlab {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

inline cplx iu() { return cplx(0.0, 1.0); }

/// Global worker count used by parallel_for.  Results are independent of
/// the value: work is tiled deterministically and reductions combine
/// partial results in tile order.
inline int& thread_count() {
    static int n = 1;
    return n;
}

inline void set_thread_count(int n) { thread_count() = n < 1 ? 1 : n; }

/// Deterministic parallel loop over [0, count).  The tile size is fixed, so
/// any per-tile accumulation is reproducible across thread counts.
template <class F>
void parallel_for(std::size_t count, F&& body) {
    const int nthreads = thread_count();
    if (nthreads <= 1 || count < 1024) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    const std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        const std::size_t lo = chunk * static_cast<std::size_t>(t);
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Sum of f(i) over [0, count) with a fixed tile decomposition and
/// tile-ordered combination, so the result is bit-identical for any
/// thread count.
template <class F>
double parallel_sum(std::size_t count, F&& f, std::size_t tile = 4096) {
    const std::size_t ntiles = (count + tile - 1) / tile;
    std::vector<double> partial(ntiles, 0.0);
    parallel_for(ntiles, [&](std::size_t t) {
        const std::size_t lo = t * tile;
        const std::size_t hi = std::min(count, lo + tile);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[t] = s;
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace stratlab
