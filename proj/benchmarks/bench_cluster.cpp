#include <benchmark/benchmark.h>

#include <numeric>

#include "tgen/genclu.hpp"
#include "tgen/rng.hpp"

namespace {

std::vector<std::vector<double>> random_points(std::size_t n, std::size_t dims,
                                               std::uint64_t seed) {
    tgen::Rng rng(seed);
    std::vector<std::vector<double>> pts(n);
    for (auto& p : pts) {
        p.resize(dims);
        for (double& x : p) x = rng.uniform();
    }
    return pts;
}

void BM_FastmapSplit(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 15, 3);
    std::vector<int> members(pts.size());
    std::iota(members.begin(), members.end(), 0);
    for (auto _ : state) {
        tgen::Rng rng(7);
        benchmark::DoNotOptimize(tgen::fastmap_split(pts, members, rng));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FastmapSplit)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_ClusterTree(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 15, 5);
    for (auto _ : state) {
        tgen::Rng rng(9);
        benchmark::DoNotOptimize(tgen::cluster(pts, 4, rng));
    }
}
BENCHMARK(BM_ClusterTree)->Arg(256)->Arg(1024);

}  // namespace
