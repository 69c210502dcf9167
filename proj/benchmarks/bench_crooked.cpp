#include "margulis/crooked.hpp"
#include "margulis/sampling.hpp"
#include "margulis/schottky.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace margulis {
namespace {

void BM_CrookedDisjoint(benchmark::State& state) {
    Rng rng(3);
    const SchottkyData d = random_domain(rng, Topology::Pants);
    const std::vector<OrientedGeodesic> sides = d.sides();
    std::vector<std::pair<CrookedHalfspace, CrookedHalfspace>> pairs;
    for (int k = 0; k < 64; ++k)
        pairs.push_back({{random_vec(rng), sides[0]}, {random_vec(rng), sides[2]}});
    std::size_t i = 0;
    for ([[maybe_unused]] auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(crooked_disjoint(a, b));
    }
}
BENCHMARK(BM_CrookedDisjoint);

void BM_ChContains(benchmark::State& state) {
    Rng rng(4);
    const CrookedHalfspace h{random_vec(rng), OrientedGeodesic(x1)};
    std::vector<MinkVec> pts;
    for (int k = 0; k < 256; ++k) pts.push_back(random_vec(rng, 3.0));
    std::size_t i = 0;
    for ([[maybe_unused]] auto _ : state) benchmark::DoNotOptimize(ch_contains(h, pts[i++ % pts.size()]));
}
BENCHMARK(BM_ChContains);

void BM_PingPongCertify(benchmark::State& state) {
    Rng rng(5);
    const SchottkyData d = random_domain(rng, Topology::OneHoledTorus);
    const Certificate c = drumm_construct(d, {1, 1, 1, 1});
    for ([[maybe_unused]] auto _ : state) benchmark::DoNotOptimize(pingpong_certify(c.gens, c.halfspaces));
}
BENCHMARK(BM_PingPongCertify);

}  // namespace
}  // namespace margulis
