#include "qlo/engine.hpp"
#include "qlo/experiments.hpp"
#include "qlo/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_HistogramDense(benchmark::State& state) {
    const auto n = static_cast<qlo::Index>(state.range(0));
    const qlo::QuadPoly q = qlo::generate_instance(qlo::SweepFamily::random_dense, n, 7, 0);
    qlo::EngineOptions opts;
    opts.workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(qlo::histogram(q, opts));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_HistogramDense)->ArgsProduct({{12, 16, 20}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_HistogramBigCoefficients(benchmark::State& state) {
    // Coefficients beyond 2^60 force the arbitrary-precision walk.
    const auto n = static_cast<qlo::Index>(state.range(0));
    qlo::QuadPoly q = qlo::generate_instance(qlo::SweepFamily::random_dense, n, 7, 0);
    q *= qlo::Rational(qlo::pow2(70));
    for (auto _ : state) benchmark::DoNotOptimize(qlo::histogram(q));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_HistogramBigCoefficients)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EdgeStats(benchmark::State& state) {
    const qlo::Graph g = qlo::Graph::cycle(static_cast<qlo::Index>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qlo::edge_stats(g, 5));
}
BENCHMARK(BM_EdgeStats)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
