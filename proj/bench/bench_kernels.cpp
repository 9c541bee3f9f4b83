// Serial reference vs OpenMP kernels over the sample dimension.
//
//   gaussrisk_bench --benchmark_filter=Logistic
//
// Arguments are (n, d). Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "gaussrisk/kernels.hpp"
#include "gaussrisk/random.hpp"

using namespace gaussrisk;

namespace {

struct Fixture {
    RowMatrix x;
    std::vector<int> y;
    Vector w;
    Vector c;
};

const Fixture& fixture(std::size_t n, std::size_t d) {
    static std::map<std::pair<std::size_t, std::size_t>, Fixture> cache;
    auto [it, inserted] = cache.try_emplace({n, d});
    if (inserted) {
        Rng rng(n * 131 + d);
        Fixture& f = it->second;
        f.x.resize(n, d);
        f.y.resize(n);
        f.w.resize(d);
        f.c.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) f.x(i, j) = rng.normal();
            f.y[i] = rng.uniform() < 0.5 ? 1 : -1;
            f.c(i) = rng.normal();
        }
        for (std::size_t j = 0; j < d; ++j) f.w(j) = 0.1 * rng.normal();
    }
    return it->second;
}

template <bool Parallel>
void Scores(benchmark::State& state) {
    const Fixture& f = fixture(state.range(0), state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::scores(f.x, f.w) : kernels::serial::scores(f.x, f.w));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void TransposeTimes(benchmark::State& state) {
    const Fixture& f = fixture(state.range(0), state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::transpose_times(f.x, f.c) : kernels::serial::transpose_times(f.x, f.c));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void LogisticSums(benchmark::State& state) {
    const Fixture& f = fixture(state.range(0), state.range(1));
    for (auto _ : state) {
        auto r = Parallel ? kernels::logistic_sums(f.x, f.y, f.w) : kernels::serial::logistic_sums(f.x, f.y, f.w);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void LogisticLoss(benchmark::State& state) {
    const Fixture& f = fixture(state.range(0), state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::logistic_loss(f.x, f.y, f.w)
                                          : kernels::serial::logistic_loss(f.x, f.y, f.w));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void MeanCovariance(benchmark::State& state) {
    const Fixture& f = fixture(state.range(0), state.range(1));
    for (auto _ : state) {
        auto r = Parallel ? kernels::mean_covariance(f.x) : kernels::serial::mean_covariance(f.x);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
    for (long n : {1000L, 100000L}) b->Args({n, 50});
    b->Args({5000, 500});
    b->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(Scores<false>)->Name("Scores/serial")->Apply(sizes);
BENCHMARK(Scores<true>)->Name("Scores/openmp")->Apply(sizes);
BENCHMARK(TransposeTimes<false>)->Name("TransposeTimes/serial")->Apply(sizes);
BENCHMARK(TransposeTimes<true>)->Name("TransposeTimes/openmp")->Apply(sizes);
BENCHMARK(LogisticSums<false>)->Name("LogisticSums/serial")->Apply(sizes);
BENCHMARK(LogisticSums<true>)->Name("LogisticSums/openmp")->Apply(sizes);
BENCHMARK(LogisticLoss<false>)->Name("LogisticLoss/serial")->Apply(sizes);
BENCHMARK(LogisticLoss<true>)->Name("LogisticLoss/openmp")->Apply(sizes);
BENCHMARK(MeanCovariance<false>)->Name("MeanCovariance/serial")->Apply(sizes);
BENCHMARK(MeanCovariance<true>)->Name("MeanCovariance/openmp")->Apply(sizes);

BENCHMARK_MAIN();
