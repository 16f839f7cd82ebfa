#include <benchmark/benchmark.h>

#include "tgen/antipatterns.hpp"
#include "tgen/domination.hpp"
#include "tgen/rng.hpp"

namespace {

tgen::Signal random_signal(std::size_t samples, std::uint64_t seed) {
    tgen::Rng rng(seed);
    tgen::Signal s;
    s.dt = 0.1;
    s.duration = 0.1 * static_cast<double>(samples - 1);
    s.values.resize(samples);
    for (double& v : s.values) v = rng.uniform(-100, 100);
    return s;
}

void BM_AntipatternQuadruple(benchmark::State& state) {
    const tgen::Signal s = random_signal(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tgen::discontinuity(s));
        benchmark::DoNotOptimize(tgen::instability(s));
        benchmark::DoNotOptimize(tgen::growth_to_infinity(s));
        benchmark::DoNotOptimize(tgen::minmax(s));
    }
}
BENCHMARK(BM_AntipatternQuadruple)->Arg(101)->Arg(1001)->Arg(10001);

void BM_DominationRank(benchmark::State& state) {
    tgen::Rng rng(13);
    std::vector<tgen::GoalVector> goals(static_cast<std::size_t>(state.range(0)));
    for (auto& g : goals) {
        g.resize(8);
        for (double& x : g) x = rng.uniform(0, 100);
    }
    const auto ctx =
        tgen::DominationContext::for_population(goals, std::vector<double>(8, -1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tgen::rank(goals, ctx));
    }
}
BENCHMARK(BM_DominationRank)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
