#include <benchmark/benchmark.h>

#include "cesaro/cesaro.hpp"
#include "reference.hpp"

using namespace cesaro;

static void BM_BinomModFast(benchmark::State& state) {
    const BinomialMod b(3, 2);
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(b.row(n));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n + 1));
}
BENCHMARK(BM_BinomModFast)->Arg(300)->Arg(4096)->Arg(65536);

static void BM_BinomModExact(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        for (std::uint64_t k = 0; k <= n; ++k) benchmark::DoNotOptimize(binom_mod_exact(n, static_cast<std::int64_t>(k), 3, 2));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n + 1));
}
BENCHMARK(BM_BinomModExact)->Arg(300)->Arg(4096);

static void BM_IsolatedSet(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(isolated_set(n, 3, 3, 2, 1));
}
BENCHMARK(BM_IsolatedSet)->Arg(1 << 10)->Arg(1 << 16);

static void BM_ExactMarginal(benchmark::State& state) {
    const auto mu = cesaro::testing::two_block_measure();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto m = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(exact_marginal(mu, n, m));
}
BENCHMARK(BM_ExactMarginal)->Args({64, 1})->Args({64, 3})->Args({512, 2})->Unit(benchmark::kMicrosecond);

static void BM_BruteMarginal(benchmark::State& state) {
    const auto mu = cesaro::testing::two_block_measure();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_marginal(mu, n, 2));
}
BENCHMARK(BM_BruteMarginal)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SamplePath(benchmark::State& state) {
    const auto s = build_regen(cesaro::testing::two_block_measure());
    const auto len = static_cast<std::size_t>(state.range(0));
    std::vector<Symbol> x;
    std::uint64_t stream = 0;
    for (auto _ : state) {
        SampleOptions opts;
        opts.stream = stream++;
        s.sample_symbols(len, 1, opts, x);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(len));
}
BENCHMARK(BM_SamplePath)->Arg(64)->Arg(4096);

static void BM_McMarginal(benchmark::State& state) {
    const auto s = build_regen(cesaro::testing::two_block_measure());
    for (auto _ : state) benchmark::DoNotOptimize(mc_marginal(s, 64, 2, 10000));
}
BENCHMARK(BM_McMarginal)->Unit(benchmark::kMillisecond);

static void BM_CesaroScan(benchmark::State& state) {
    const auto mu = cesaro::testing::two_block_measure();
    const auto N = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_scan(mu, 2, N, Subsequence{}).final_tv());
}
BENCHMARK(BM_CesaroScan)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
