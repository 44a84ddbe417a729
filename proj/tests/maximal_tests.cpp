#include <doctest.h>

#include <vector>

#include "czhardy/maximal.hpp"
#include "czhardy/random.hpp"

using namespace czhardy;

namespace {

// Oracle: loop over every admissible trapezoid and every vertex in it.
TreeFunction brute_maximal(const TreeFunction& f, const WeightedMeasure& mu) {
    const TreeTruncation& tree = f.tree();
    TreeFunction best(tree);
    for (const auto& R : all_admissible_trapezoids(tree)) {
        Rational sum(0);
        for_each_vertex(tree, R, [&](Vertex v) { sum += abs(f[v]) * mu(v); });
        Rational avg = sum / mu_trapezoid(mu, R);
        for_each_vertex(tree, R, [&](Vertex v) {
            if (avg > best[v]) best[v] = avg;
        });
    }
    return best;
}

}  // namespace

TEST_CASE("band integrals equal direct sums") {
    TreeTruncation tree({.q = 3, .depth = 5});
    WeightedMeasure mu(tree);
    Rng rng(11);
    TreeFunction f = random_function(tree, rng);
    TreeFunction density = abs_pow(f, 1);
    BandIntegrals bands(density, mu);
    for (std::uint32_t i = 0; i < tree.vertex_count(); i += 7) {
        Vertex root{i};
        long room = tree.depth() - tree.depth_of(root);
        for (long lo = 0; lo <= room; ++lo)
            for (long hi = lo; hi <= room; ++hi) {
                Rational direct(0);
                for (long d = lo; d <= hi; ++d) {
                    auto [first, count] = tree.descendant_range(root, d);
                    for (std::uint64_t k = 0; k < count; ++k) {
                        Vertex v{static_cast<std::uint32_t>(first.idx + k)};
                        direct += density[v] * mu(v);
                    }
                }
                CHECK(bands.band(root, lo, hi) == direct);
            }
    }
}

TEST_CASE("maximal function matches the brute force oracle") {
    for (long q : {2L, 3L}) {
        TreeTruncation tree({.q = q, .depth = 4});
        WeightedMeasure mu(tree);
        Rng rng(5 + q);
        TreeFunction f = random_function(tree, rng);
        TreeFunction fast = maximal_function(f, mu);
        TreeFunction slow = brute_maximal(f, mu);
        for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
            CHECK(fast.at_index(i) == slow.at_index(i));
        // degenerate singletons force Mf >= |f|
        for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
            CHECK(fast.at_index(i) >= abs(f.at_index(i)));
    }
}

TEST_CASE("restricted maximal vanishes outside and is dominated") {
    TreeTruncation tree({.q = 3, .depth = 5});
    WeightedMeasure mu(tree);
    Rng rng(23);
    TreeFunction f = random_function(tree, rng);
    CZSet Q = make_czset(tree, tree.vertex_at("1"), 1);
    TreeFunction full = maximal_function(f, mu);
    TreeFunction restricted = maximal_function_restricted(f, mu, Q);
    std::vector<char> inside(tree.vertex_count(), 0);
    for_each_vertex(tree, Q, [&](Vertex v) { inside[v.idx] = 1; });
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        if (!inside[i]) CHECK(restricted.at_index(i) == 0);
        CHECK(restricted.at_index(i) <= full.at_index(i));
    }
}

TEST_CASE("covering certificates hold on random functions") {
    TreeTruncation tree({.q = 3, .depth = 5});
    WeightedMeasure mu(tree);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Rng rng(seed);
        TreeFunction f = random_function(tree, rng);
        for (unsigned long p : {1ul, 2ul}) {
            CoveringResult cov = cz_covering(f, mu, p, Rational(1, 4));
            CHECK(cov.all_certificates());
            CHECK(cov.mu_union_envelopes <= cov.sum_mu_envelopes);
            CHECK(cov.threshold_pow * cov.sum_mu_selected <= cov.total_density);
        }
    }
}

TEST_CASE("level sets shrink as the threshold rises") {
    TreeTruncation tree({.q = 2, .depth = 6});
    WeightedMeasure mu(tree);
    Rng rng(7);
    TreeFunction f = random_function(tree, rng);
    CoveringResult loose = cz_covering(f, mu, 2, Rational(1, 8));
    CoveringResult tight = cz_covering(f, mu, 2, Rational(1, 2));
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        if (tight.level_set[i]) CHECK(loose.level_set[i]);
    CHECK(tight.mu_level_set <= loose.mu_level_set);
    CHECK(tight.selected.size() <= loose.selected.size());
}

TEST_CASE("selection is empty above the sup and total below the mean") {
    TreeTruncation tree({.q = 2, .depth = 4});
    WeightedMeasure mu(tree);
    Rng rng(3);
    TreeFunction f = random_function(tree, rng);
    CoveringResult none = cz_covering(f, mu, 2, Rational(10));
    CHECK(none.selected.empty());
    CHECK(none.mu_level_set == 0);
    // at a tiny threshold the whole truncation is flooded
    CoveringResult all = cz_covering(f, mu, 2, Rational(1, 1u << 20));
    CHECK(all.mu_level_set > 0);
    CHECK(!all.selected.empty());
}
