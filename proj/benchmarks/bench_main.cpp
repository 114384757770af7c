#include <benchmark/benchmark.h>

#include "heckelab/characters.hpp"
#include "heckelab/dirichlet_series.hpp"
#include "heckelab/eigen.hpp"
#include "heckelab/kfull.hpp"
#include "heckelab/sums.hpp"

namespace hl = heckelab;

static void BM_TauSeries(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        auto tau = hl::compute_tau_series(n, 1);
        benchmark::DoNotOptimize(tau.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_TauSeries)->Arg(10000)->Arg(100000)->Complexity();

static void BM_FactorTable(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        hl::FactorTable table(n);
        benchmark::DoNotOptimize(table.primes().data());
    }
}
BENCHMARK(BM_FactorTable)->Arg(100000)->Arg(1000000);

static void BM_DirichletConvolve(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    auto ones = hl::FormalDirichletSeries::ones(n);
    for (auto _ : state) {
        auto d = hl::dirichlet_convolve(ones, ones);
        benchmark::DoNotOptimize(d.a.data());
    }
}
BENCHMARK(BM_DirichletConvolve)->Arg(10000)->Arg(100000);

static void BM_CharacterGroup(benchmark::State& state) {
    const auto q = static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        hl::CharacterGroup group(q);
        benchmark::DoNotOptimize(group.characters().data());
    }
}
BENCHMARK(BM_CharacterGroup)->Arg(60)->Arg(420);

static void BM_ProgressionSum(benchmark::State& state) {
    const auto x = static_cast<std::int64_t>(state.range(0));
    static auto eigen = hl::EigenSystem::delta(1000001);
    static auto lambda4 = eigen.lambda4_table();
    for (auto _ : state) {
        double s = hl::progression_sum(lambda4, x, 5, 1);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_ProgressionSum)->Arg(100000)->Arg(1000000);

static void BM_EnumerateKFull(benchmark::State& state) {
    const auto x = static_cast<std::int64_t>(state.range(0));
    for (auto _ : state) {
        auto v = hl::enumerate_kfull(x, 2);
        benchmark::DoNotOptimize(v.data());
    }
}
BENCHMARK(BM_EnumerateKFull)->Arg(1000000)->Arg(100000000);

BENCHMARK_MAIN();
