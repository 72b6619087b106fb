#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isosys::par {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Results are bit-identical either way: element-wise loops assign disjoint
// outputs, and reductions accumulate fixed-size blocks in a fixed order.
void set_parallel(bool enabled);
bool parallel_enabled();

int max_threads();

inline constexpr std::size_t kReduceBlock = 1024;

template <typename F>
void parallel_for(std::size_t count, F&& body) {
    if (parallel_enabled()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            body(static_cast<std::size_t>(i));
        return;
#endif
    }
    for (std::size_t i = 0; i < count; ++i) body(i);
}

// Deterministic sum: per-block partial sums (parallel), combined serially in
// block order. Independent of thread count.
template <typename F>
double block_sum(std::size_t count, F&& term) {
    const std::size_t nblocks = (count + kReduceBlock - 1) / kReduceBlock;
    std::vector<double> partial(nblocks, 0.0);
    parallel_for(nblocks, [&](std::size_t b) {
        double s = 0.0;
        const std::size_t end = std::min(count, (b + 1) * kReduceBlock);
        for (std::size_t i = b * kReduceBlock; i < end; ++i) s += term(i);
        partial[b] = s;
    });
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

// Deterministic max over doubles.
template <typename F>
double block_max(std::size_t count, F&& term) {
    const std::size_t nblocks = (count + kReduceBlock - 1) / kReduceBlock;
    std::vector<double> partial(nblocks, -1e300);
    parallel_for(nblocks, [&](std::size_t b) {
        double m = -1e300;
        const std::size_t end = std::min(count, (b + 1) * kReduceBlock);
        for (std::size_t i = b * kReduceBlock; i < end; ++i) m = std::max(m, term(i));
        partial[b] = m;
    });
    double total = -1e300;
    for (double v : partial) total = std::max(total, v);
    return total;
}

}  // namespace isosys::par
