#include "selberg/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace selberg {

int worker_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("SELBERG_FUCHS_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) n = std::min(n, cap);
        } catch (const std::exception&) {
            // unparsable value: keep the default
        }
    }
    return std::max(n, 1);
}

}  // namespace selberg
