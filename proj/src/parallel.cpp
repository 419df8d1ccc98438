#include "flmlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace flmlab {

unsigned worker_count() {
    if (const char* env = std::getenv("FLMLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<Moments> block_moments_multi(std::uint64_t n, std::size_t k,
                                         const std::function<void(std::uint64_t, double*)>& f) {
    const std::uint64_t blocks = (n + kMomentBlock - 1) / kMomentBlock;
    std::vector<std::vector<Moments>> partial(blocks, std::vector<Moments>(k));
    parallel_for(blocks, [&](std::size_t b) {
        const std::uint64_t lo = b * kMomentBlock;
        const std::uint64_t hi = std::min(n, lo + kMomentBlock);
        std::vector<double> out(k);
        auto& acc = partial[b];
        for (std::uint64_t i = lo; i < hi; ++i) {
            f(i, out.data());
            for (std::size_t j = 0; j < k; ++j) {
                acc[j].sum += out[j];
                acc[j].sum_sq += out[j] * out[j];
                ++acc[j].count;
            }
        }
    });
    std::vector<Moments> total(k);
    for (const auto& blk : partial) {
        for (std::size_t j = 0; j < k; ++j) {
            total[j].sum += blk[j].sum;
            total[j].sum_sq += blk[j].sum_sq;
            total[j].count += blk[j].count;
        }
    }
    return total;
}

Moments block_moments(std::uint64_t n, const std::function<double(std::uint64_t)>& f) {
    return block_moments_multi(n, 1, [&](std::uint64_t i, double* out) { out[0] = f(i); })[0];
}

} // namespace flmlab
