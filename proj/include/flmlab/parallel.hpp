#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace flmlab {

// Worker count for index-range loops; FLMLAB_THREADS overrides the hardware count.
unsigned worker_count();

// Runs body(i) for i in [0, n) across worker threads. body must only write
// to slot i of whatever it fills.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Accumulated first and second moments over a sample index range.
struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;
};

// Sums f(i) for i in [0, n) in fixed blocks of kMomentBlock samples; blocks are
// combined in index order, so the result does not depend on the number of
// workers.
inline constexpr std::uint64_t kMomentBlock = 4096;
Moments block_moments(std::uint64_t n, const std::function<double(std::uint64_t)>& f);

// Same, for several statistics of one draw (f fills out[0..k)).
std::vector<Moments> block_moments_multi(std::uint64_t n, std::size_t k,
                                         const std::function<void(std::uint64_t, double*)>& f);

} // namespace flmlab
