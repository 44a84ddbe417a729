#include <benchmark/benchmark.h>

#include "czhardy/operators.hpp"
#include "czhardy/random.hpp"

using namespace czhardy;

// Dense symmetric eigensolve; cubic in the vertex count, and the setup cost
// behind every multiplier below.
static void BM_SpectralSystem(benchmark::State& state) {
    TreeTruncation tree({.q = 3, .depth = state.range(0)});
    WeightedMeasure mu(tree);
    for (auto _ : state) {
        SpectralSystem sys(tree, mu);
        benchmark::DoNotOptimize(sys.min_eigenvalue());
    }
    state.SetComplexityN(tree.vertex_count());
}
BENCHMARK(BM_SpectralSystem)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_MultiplierKernel(benchmark::State& state) {
    TreeTruncation tree({.q = 3, .depth = state.range(0)});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    auto heat = heat_multiplier(1.0);
    for (auto _ : state) {
        OperatorMatrix K = sys.multiplier_kernel(heat);
        benchmark::DoNotOptimize(K);
    }
}
BENCHMARK(BM_MultiplierKernel)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

// Sweep over all set/base-point/sibling triples; quadratic per set in the
// worst case and the dominant cost of the regularity report.
static void BM_HormanderSweep(benchmark::State& state) {
    TreeTruncation tree({.q = 3, .depth = state.range(0)});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix heat = sys.multiplier_kernel(heat_multiplier(1.0));
    for (auto _ : state) {
        HormanderSweep sweep = hormander_sweep(heat, tree, mu);
        benchmark::DoNotOptimize(sweep.sup);
    }
}
BENCHMARK(BM_HormanderSweep)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_RieszOnAtoms(benchmark::State& state) {
    TreeTruncation tree({.q = 3, .depth = state.range(0)});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    Rng rng(42);
    std::vector<Atom> atoms;
    for (int i = 0; i < 50; ++i) atoms.push_back(random_atom(tree, mu, rng));
    for (auto _ : state) {
        AtomApplyReport rep = h1_to_l1_ratio(
            [&sys](const Eigen::VectorXd& v) { return sys.riesz(v); }, mu, atoms);
        benchmark::DoNotOptimize(rep.max_l1);
    }
}
BENCHMARK(BM_RieszOnAtoms)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
