#include <doctest.h>

#include <set>

#include "czhardy/random.hpp"
#include "czhardy/report.hpp"

using namespace czhardy;

TEST_CASE("rng streams are reproducible and in range") {
    Rng a(123), b(123), c(124);
    bool same = true, differ = false;
    for (int i = 0; i < 100; ++i) {
        std::uint64_t x = a.next(), y = b.next(), z = c.next();
        same = same && (x == y);
        differ = differ || (x != z);
    }
    CHECK(same);
    CHECK(differ);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.below(17) < 17);
        long r = a.range(-3, 5);
        CHECK(r >= -3);
        CHECK(r <= 5);
        Rational d = a.dyadic(10);
        CHECK(d >= 0);
        CHECK(d < 1);
        Rational s = a.dyadic_symmetric(10);
        CHECK(s >= -1);
        CHECK(s <= 1);
    }
}

TEST_CASE("random function families have the advertised shape") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    Rng rng(7);

    TreeFunction dense = random_function(tree, rng);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        CHECK(dense.at_index(i) >= -1);
        CHECK(dense.at_index(i) <= 1);
    }

    TreeFunction sparse = random_sparse_function(tree, rng, 5, 3);
    std::size_t nonzero = 0;
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        if (sparse.at_index(i) != 0) {
            ++nonzero;
            CHECK(tree.depth_of(Vertex{i}) == 3);
        }
    CHECK(nonzero == 5);

    TreeFunction iso = random_isotropic_function(tree, mu, rng, 2.0);
    CHECK(lp_norm_pow(iso, mu, 2) > 0);
}

TEST_CASE("dipole ladders place one cancelling pair per depth") {
    TreeTruncation tree({.q = 3, .depth = 5, .apex_level = 1});
    WeightedMeasure mu(tree);
    Rng rng(3);
    TreeFunction f = random_dipole_ladder(tree, mu, rng);
    CHECK(integral(f, mu) == 0);
    CHECK(f[tree.apex()] == 0);
    for (long d = 1; d <= tree.depth(); ++d) {
        std::uint32_t first = tree.first_index_at_depth(d);
        std::set<std::uint32_t> parents;
        Rational slice(0);
        std::size_t nonzero = 0;
        for (std::uint32_t i = first; i < first + tree.vertices_at_depth(d); ++i)
            if (f.at_index(i) != 0) {
                ++nonzero;
                slice += f.at_index(i);
                parents.insert(tree.parent(Vertex{i}).idx);
            }
        CHECK(nonzero == 2);
        CHECK(parents.size() == 1);  // siblings
        CHECK(slice == 0);           // equal weights at one depth: exact cancellation
    }
}

TEST_CASE("rationals serialize as num/den strings") {
    CHECK(fraction(Rational(3, 4)) == "3/4");
    CHECK(fraction(Rational(5)) == "5");
    CHECK(fraction(Rational(-2, 7)) == "-2/7");
    CHECK(fraction(Rational(0)) == "0");
    CHECK(fraction(Rational(6, 4)) == "3/2");  // canonical form
}

TEST_CASE("doubles serialize as shortest round trips") {
    for (double x : {0.1, 1.0, 0.5342117, 6.02e23, 1e-17, -3.25, 0.0}) {
        std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("reports are byte stable and csv is rectangular") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    Rng rng(7);
    TreeFunction f = random_function(tree, rng);
    CoveringResult cov = cz_covering(f, mu, 2, Rational(1, 4));
    std::string once = json_text(covering_json(tree, cov));
    std::string twice = json_text(covering_json(tree, cov));
    CHECK(once == twice);
    CHECK(once.back() == '\n');

    std::string csv = csv_text({"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(csv == "a,b\n1,2\n3,4\n");
}

TEST_CASE("function json names vertices by word and skips zeros") {
    TreeTruncation tree({.q = 2, .depth = 3});
    TreeFunction f(tree);
    f[tree.vertex_at("01")] = Rational(5, 3);
    Json j = function_json(tree, f);
    CHECK(j.size() == 1);
    CHECK(j["01"] == "5/3");
}
