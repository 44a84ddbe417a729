#include <benchmark/benchmark.h>

#include "czhardy/maximal.hpp"
#include "czhardy/random.hpp"

using namespace czhardy;

static void BM_BandIntegrals(benchmark::State& state) {
    TreeTruncation tree({.q = state.range(0), .depth = state.range(1)});
    WeightedMeasure mu(tree);
    Rng rng(3);
    TreeFunction f = random_function(tree, rng);
    TreeFunction g = abs_pow(f, 2);
    for (auto _ : state) {
        BandIntegrals bands(g, mu);
        benchmark::DoNotOptimize(bands.total());
    }
}
BENCHMARK(BM_BandIntegrals)
    ->Args({2, 8})
    ->Args({2, 10})
    ->Args({2, 12})
    ->Args({3, 6})
    ->Args({3, 7})
    ->Unit(benchmark::kMillisecond);

static void BM_MaximalFunction(benchmark::State& state) {
    TreeTruncation tree({.q = state.range(0), .depth = state.range(1)});
    WeightedMeasure mu(tree);
    Rng rng(3);
    TreeFunction f = random_function(tree, rng);
    for (auto _ : state) {
        TreeFunction m = maximal_function(f, mu);
        benchmark::DoNotOptimize(m);
    }
    state.SetComplexityN(tree.vertex_count());
}
BENCHMARK(BM_MaximalFunction)
    ->Args({2, 6})
    ->Args({2, 8})
    ->Args({2, 10})
    ->Args({3, 5})
    ->Args({3, 6})
    ->Unit(benchmark::kMillisecond)
    ->Complexity();

// Dilation is pure set expansion, no arithmetic; dominated by neighborhood
// walks near the band faces.
static void BM_Dilate(benchmark::State& state) {
    TreeTruncation tree({.q = 3, .depth = state.range(0)});
    std::vector<CZSet> sets;
    for (std::uint32_t i = 0; i < tree.vertex_count(); i += 11) {
        Vertex v{i};
        long room = tree.depth() - tree.depth_of(v);
        if (room >= 2) sets.push_back(make_czset(tree, v, 2, ClipPolicy::clip));
    }
    for (auto _ : state)
        for (const CZSet& S : sets) {
            DilatedCZSet d = dilate(tree, S);
            benchmark::DoNotOptimize(d.members);
        }
}
BENCHMARK(BM_Dilate)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
