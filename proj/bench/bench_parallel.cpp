// Serial reference vs OpenMP for the three parallel kernels: grid evaluation
// of the order-statistic densities, importance-sampled Monte Carlo, and the
// N+1 Frobenius solutions.

#include <benchmark/benchmark.h>

#include <vector>

#include "selberg/assembly.hpp"
#include "selberg/fuchsian.hpp"
#include "selberg/oracle.hpp"
#include "selberg/parallel.hpp"

namespace {

using selberg::Execution;
using selberg::Params;

void density_grid(benchmark::State& st, Execution ex) {
    const Params p = Params::make(5, 1, 1, selberg::Rational{1, 3}, 1);
    const selberg::SplitIntegrals si(p);
    const int n = static_cast<int>(st.range(0));
    std::vector<double> out(static_cast<std::size_t>(n) * 5);
    for (auto _ : st) {
        selberg::for_each_index(
            n,
            [&](int i) {
                const double x = (i + 0.5) / n;
                for (int k = 0; k < 5; ++k) out[i * 5 + k] = selberg::order_stat_density(k, x, si);
            },
            ex);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * n);
}

void monte_carlo(benchmark::State& st, Execution ex) {
    const Params p = Params::make(4, 0.4, 0.7, 0.6, 1.3);
    for (auto _ : st) {
        benchmark::DoNotOptimize(selberg::mc_Iq(2, 0.4, p, st.range(0), 1, ex).value);
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void frobenius_set(benchmark::State& st, Execution ex) {
    const Params p = Params::make(6, 0.27, 0.61, 0.437, 1.13);
    const int L = static_cast<int>(st.range(0));
    std::vector<selberg::FrobeniusSolution> out(p.N + 1);
    for (auto _ : st) {
        if (ex == Execution::parallel) {
            out = selberg::frobenius_all(p, L);
        } else {
            for (int k = 0; k <= p.N; ++k) out[k] = selberg::frobenius(k, p, L);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(density_grid, serial, Execution::serial)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(density_grid, parallel, Execution::parallel)->Arg(401)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(monte_carlo, serial, Execution::serial)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(monte_carlo, parallel, Execution::parallel)->Arg(200000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(frobenius_set, serial, Execution::serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(frobenius_set, parallel, Execution::parallel)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
