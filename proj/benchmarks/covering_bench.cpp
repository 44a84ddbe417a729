#include <benchmark/benchmark.h>

#include "czhardy/maximal.hpp"
#include "czhardy/random.hpp"

using namespace czhardy;

// Full covering run: density, maximal function, greedy selection,
// certificates.  All exact rational arithmetic, so this is the number to
// watch when the candidate scan changes.
static void BM_Covering(benchmark::State& state) {
    TreeTruncation tree({.q = state.range(0), .depth = state.range(1)});
    WeightedMeasure mu(tree);
    Rng rng(7);
    TreeFunction f = random_function(tree, rng);
    for (auto _ : state) {
        CoveringResult cov = cz_covering(f, mu, 2, Rational(1, 4));
        benchmark::DoNotOptimize(cov.mu_union_envelopes);
    }
    state.SetComplexityN(tree.vertex_count());
}
BENCHMARK(BM_Covering)
    ->Args({2, 6})
    ->Args({2, 8})
    ->Args({2, 10})
    ->Args({3, 5})
    ->Args({3, 6})
    ->Unit(benchmark::kMillisecond)
    ->Complexity();

// Sparse data floods far fewer candidates past the threshold; the gap to
// BM_Covering shows how much of the cost is selection versus scanning.
static void BM_CoveringSparse(benchmark::State& state) {
    TreeTruncation tree({.q = 2, .depth = state.range(0)});
    WeightedMeasure mu(tree);
    Rng rng(7);
    TreeFunction f = random_sparse_function(tree, rng, 8);
    for (auto _ : state) {
        CoveringResult cov = cz_covering(f, mu, 2, Rational(1, 4));
        benchmark::DoNotOptimize(cov.selected);
    }
}
BENCHMARK(BM_CoveringSparse)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
