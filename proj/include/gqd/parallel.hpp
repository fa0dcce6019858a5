#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gqd {

enum class ExecPolicy { Serial, Parallel };

/// Thread cap: min(GQD_THREADS, hardware), at least 1.
int max_threads();

/// Runs fn(i) for i in [0, n).  Iterations must be independent; each writes
/// its own slot, so serial and parallel execution give identical results.
void parallel_for_index(std::size_t n, bool parallel,
                        const std::function<void(std::size_t)>& fn);

/// Pairwise tree sum in fixed order; independent of thread count.
template <class T>
T pairwise_sum(const std::vector<T>& v) {
    if (v.empty()) return T{};
    std::vector<T> cur = v;
    while (cur.size() > 1) {
        std::vector<T> next((cur.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < cur.size(); i += 2) next[i / 2] = cur[i] + cur[i + 1];
        if (cur.size() % 2 == 1) next.back() = cur.back();
        cur.swap(next);
    }
    return cur.front();
}

}  // namespace gqd
