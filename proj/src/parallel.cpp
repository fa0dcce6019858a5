#include "gqd/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gqd {

int max_threads() {
    static const int cached = [] {
        int hw = 1;
#ifdef _OPENMP
        hw = omp_get_max_threads();
#endif
        if (const char* env = std::getenv("GQD_THREADS")) {
            try {
                const int cap = std::stoi(env);
                if (cap >= 1 && cap < hw) hw = cap;
            } catch (...) {
            }
        }
        return hw < 1 ? 1 : hw;
    }();
    return cached;
}

void parallel_for_index(std::size_t n, bool parallel,
                        const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
    if (parallel && max_threads() > 1 && n > 1) {
        const auto nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(max_threads())
        for (long long i = 0; i < nn; ++i) fn(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)parallel;
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace gqd
