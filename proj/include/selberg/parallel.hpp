#pragma once

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace selberg {

enum class Execution { serial, parallel };

/// Worker count: OpenMP's default, capped by SELBERG_FUCHS_THREADS when set.
int worker_threads();

/// Runs f(i) for i in [0, n). Each index is independent; the first exception
/// (lowest index) is rethrown after all indices finish. The serial path is the
/// reference the parallel one is tested against.
template <class F>
void for_each_index(int n, F&& f, Execution ex = Execution::parallel) {
    if (ex == Execution::serial || n < 2) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
    for (int i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace selberg
