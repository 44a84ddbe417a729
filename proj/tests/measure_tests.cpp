#include <doctest.h>

#include <cmath>
#include <queue>
#include <vector>

#include "czhardy/measure.hpp"

using namespace czhardy;

namespace {

std::vector<long> bfs_distances(const TreeTruncation& tree, Vertex src) {
    std::vector<long> dist(tree.vertex_count(), -1);
    std::queue<Vertex> queue;
    dist[src.idx] = 0;
    queue.push(src);
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop();
        for (Vertex w : tree.neighbors(v))
            if (dist[w.idx] < 0) {
                dist[w.idx] = dist[v.idx] + 1;
                queue.push(w);
            }
    }
    return dist;
}

}  // namespace

TEST_CASE("weights are the level powers and total adds up") {
    TreeTruncation tree({.q = 2, .depth = 3});
    WeightedMeasure mu(tree);
    for (long d = 0; d <= 3; ++d) CHECK(mu.weight_at_depth(d) == rational_pow(2, 3 - d));
    // 4 levels, each of total measure 2^3.
    CHECK(mu.total() == 32);
}

TEST_CASE("fractional weights for shifted apex levels") {
    TreeTruncation tree({.q = 3, .depth = 4, .apex_level = 1});
    WeightedMeasure mu(tree);
    CHECK(mu.weight_at_depth(0) == 3);
    CHECK(mu.weight_at_depth(4) == Rational(1, 27));

    TreeTruncation neg({.q = 3, .depth = 2, .apex_level = -1});
    WeightedMeasure mun(neg);
    CHECK(mun.weight_at_depth(0) == Rational(1, 3));
}

TEST_CASE("sphere and ball measures match exhaustive enumeration") {
    for (long q : {2L, 3L}) {
        TreeTruncation tree({.q = q, .depth = 5});
        WeightedMeasure mu(tree);
        for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
            Vertex x0{i};
            auto dist = bfs_distances(tree, x0);
            std::vector<Rational> sphere(2 * tree.depth() + 1, Rational(0));
            for (std::uint32_t j = 0; j < tree.vertex_count(); ++j)
                sphere[dist[j]] += mu(Vertex{j});
            Rational ball = sphere[0];
            for (long r = 1; mu.sphere_contained(x0, r); ++r) {
                ball += sphere[r];
                CHECK(mu.mu_sphere(x0, r) == sphere[r]);
                CHECK(mu.mu_ball(x0, r) == ball);
                // closed forms: q^(level+r-1)(1+q) and the geometric ball sum
                CHECK(mu.mu_sphere(x0, r) ==
                      rational_pow(q, tree.level(x0) + r - 1) * Rational(1 + q));
                CHECK(mu.mu_ball(x0, r) ==
                      rational_pow(q, tree.level(x0)) *
                          Rational(rational_pow(q, r + 1) + rational_pow(q, r) - 2) /
                          Rational(q - 1));
            }
        }
    }
}

TEST_CASE("doubling ratio and the local doubling constant") {
    TreeTruncation tree({.q = 3, .depth = 6});
    WeightedMeasure mu(tree);
    Vertex x0 = tree.vertex_at("000");
    CHECK(mu.doubling_ratio(x0, 1) == mu.mu_ball(x0, 2) / mu.mu_ball(x0, 1));
    CHECK(mu.local_doubling_constant(1) == Rational(17, 5));
    // exponential growth: the best local constant increases without bound
    Rational prev(0);
    for (long R = 1; R <= 5; ++R) {
        Rational c = mu.local_doubling_constant(R);
        CHECK(c > prev);
        prev = c;
    }
    // and every contained doubling ratio obeys it
    for (long r = 1; mu.sphere_contained(x0, 2 * r); ++r)
        CHECK(mu.doubling_ratio(x0, r) <= mu.local_doubling_constant(r));
}

TEST_CASE("norms agree with direct sums") {
    TreeTruncation tree({.q = 2, .depth = 3});
    WeightedMeasure mu(tree);
    TreeFunction f(tree);
    f[tree.vertex_at("0")] = Rational(-3, 2);
    f[tree.vertex_at("11")] = Rational(5);
    CHECK(integral(f, mu) == Rational(-3, 2) * 4 + Rational(5) * 2);
    CHECK(l1_norm(f, mu) == Rational(3, 2) * 4 + Rational(5) * 2);
    CHECK(linf_norm(f) == 5);
    CHECK(lp_norm_pow(f, mu, 2) == Rational(9, 4) * 4 + Rational(25) * 2);
    CHECK(lp_norm(f, mu, 2.0) == doctest::Approx(std::sqrt(9.0 + 50.0)));
    CHECK(abs_pow(f, 3)[tree.vertex_at("0")] == Rational(27, 8));
}
