#include "margulis/deformation.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/sampling.hpp"

#include <benchmark/benchmark.h>

namespace margulis {
namespace {

SchottkyData pants() { return domain_from_arcs({{0.2, 1.3}, {1.7, 2.8}, {3.3, 4.4}, {4.8, 5.9}}, {0.3, -0.2}); }

void BM_EvalAffine(benchmark::State& state) {
    Rng rng(1);
    const SchottkyData d = pants();
    const Cocycle u{{random_vec(rng), random_vec(rng)}};
    std::vector<int> letters;
    for (int k = 0; k < state.range(0); ++k) letters.push_back(k % 3 == 2 ? -2 : 1 + k % 2);
    const FreeWord w = reduce(letters);
    for ([[maybe_unused]] auto _ : state) benchmark::DoNotOptimize(eval_affine(d.gens, u, w));
}
BENCHMARK(BM_EvalAffine)->Arg(4)->Arg(8)->Arg(16);

void BM_SpectrumScan(benchmark::State& state) {
    Rng rng(2);
    const SchottkyData d = pants();
    const Cocycle u{{random_vec(rng), random_vec(rng)}};
    const ScanOptions opts{false, kClassifyTolerance, static_cast<int>(state.range(1))};
    for ([[maybe_unused]] auto _ : state)
        benchmark::DoNotOptimize(spectrum_scan(d.gens, u, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_SpectrumScan)->Args({6, 1})->Args({8, 1})->Args({8, 4})->Unit(benchmark::kMillisecond);

void BM_ConePlot(benchmark::State& state) {
    const SchottkyData d = pants();
    const H1Chart chart = h1_chart(d.gens);
    const ConePlotOptions opts{ChartChoice::Auto, false, kClassifyTolerance, 1};
    for ([[maybe_unused]] auto _ : state)
        benchmark::DoNotOptimize(cone_plot(d.gens, static_cast<int>(state.range(0)), chart, opts));
}
BENCHMARK(BM_ConePlot)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace margulis
