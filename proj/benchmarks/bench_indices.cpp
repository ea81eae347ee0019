#include <benchmark/benchmark.h>

#include "cvi/base_stats.hpp"
#include "cvi/datagen.hpp"
#include "cvi/diagnostics.hpp"
#include "cvi/indices.hpp"
#include "cvi/kmeans.hpp"
#include "cvi/metrics.hpp"

namespace {

cvi::Dataset make_data(std::size_t dim) {
    cvi::SchemeConfig cfg;
    cfg.dim = dim;
    return cvi::generate(cfg, 42);
}

void BM_PairwiseMatrix(benchmark::State& state) {
    auto ds = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cvi::pairwise_matrix(ds, cvi::MetricSpec::euclidean()));
}
BENCHMARK(BM_PairwiseMatrix)->Arg(5)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_SortedPairsBuild(benchmark::State& state) {
    auto ds = make_data(5);
    auto dm = cvi::pairwise_matrix(ds, cvi::MetricSpec::euclidean());
    for (auto _ : state) benchmark::DoNotOptimize(cvi::SortedPairs(dm));
}
BENCHMARK(BM_SortedPairsBuild)->Unit(benchmark::kMillisecond);

void BM_PairCountsSweep(benchmark::State& state) {
    auto ds = make_data(5);
    cvi::SortedPairs sp(cvi::pairwise_matrix(ds, cvi::MetricSpec::euclidean()));
    auto part = cvi::kmeans(ds, 5, 1);
    for (auto _ : state) benchmark::DoNotOptimize(sp.counts(part));
}
BENCHMARK(BM_PairCountsSweep)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
    auto ds = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cvi::kmeans(ds, 5, 1));
}
BENCHMARK(BM_KMeans)->Arg(5)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_AllIndicesCurve(benchmark::State& state) {
    auto ds = make_data(static_cast<std::size_t>(state.range(0)));
    auto parts = cvi::kmeans_sweep(ds, 2, 8, 1);
    std::vector<cvi::IndexId> ids;
    for (const auto& info : cvi::index_registry()) ids.push_back(info.id);
    for (auto _ : state) {
        cvi::Evaluator ev(ds, cvi::MetricSpec::euclidean());
        benchmark::DoNotOptimize(ev.evaluate_curves(ids, parts));
    }
}
BENCHMARK(BM_AllIndicesCurve)->Arg(5)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_Hubness(benchmark::State& state) {
    auto ds = cvi::generate_distribution({cvi::DistributionKind::Gaussian, 0}, 1000,
                                         static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(cvi::hubness(ds, 5, cvi::MetricSpec::euclidean()));
}
BENCHMARK(BM_Hubness)->Arg(5)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
