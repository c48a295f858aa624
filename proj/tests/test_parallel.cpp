#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "selberg/assembly.hpp"
#include "selberg/fuchsian.hpp"
#include "selberg/parallel.hpp"

using namespace selberg;

TEST_CASE("every index runs exactly once") {
    std::vector<std::atomic<int>> hits(1000);
    for_each_index(1000, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("lowest failing index is rethrown") {
    auto f = [](int i) {
        if (i == 17 || i == 500) throw std::runtime_error(std::to_string(i));
    };
    for (auto ex : {Execution::serial, Execution::parallel}) {
        try {
            for_each_index(1000, f, ex);
            FAIL("no exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "17");
        }
    }
}

TEST_CASE("thread cap from the environment") {
    setenv("SELBERG_FUCHS_THREADS", "1", 1);
    CHECK(worker_threads() == 1);
    unsetenv("SELBERG_FUCHS_THREADS");
    CHECK(worker_threads() >= 1);
}

TEST_CASE("grid evaluation matches the serial reference bit for bit") {
    const Params p = Params::make(4, 0.3, 0.8, Rational{1, 3}, 1.0);
    const SplitIntegrals si(p);
    const int n = 64;
    std::vector<double> par(n * 4), ser(n * 4);
    auto fill = [&](std::vector<double>& out) {
        return [&](int i) {
            const double x = (i + 0.5) / n;
            for (int k = 0; k < 4; ++k) out[i * 4 + k] = order_stat_density(k, x, si);
        };
    };
    for_each_index(n, fill(par), Execution::parallel);
    for_each_index(n, fill(ser), Execution::serial);
    CHECK(par == ser);
}

TEST_CASE("parallel Frobenius solutions equal the one-at-a-time ones") {
    const Params p = Params::make(5, 0.27, 0.61, 0.437, 1.13);
    const auto all = frobenius_all(p, 60);
    for (int k = 0; k <= 5; ++k) CHECK(all[k].coeffs == frobenius(k, p, 60).coeffs);
}
