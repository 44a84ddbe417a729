#include <doctest.h>

#include <cmath>
#include <limits>

#include "czhardy/interpolation.hpp"
#include "czhardy/random.hpp"

using namespace czhardy;

TEST_CASE("k_decompose splits exactly with localized mean-zero pieces") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        TreeFunction f = random_function(tree, rng);
        KDecomposition kd = k_decompose(f, mu, 2.0, Rational(1, 4));
        CHECK(kd.reconstruction_exact);
        CHECK(kd.pieces_mean_zero);
        CHECK(kd.pieces_supported);
        CHECK(kd.h1_bad_bound >= 0);
    }
}

TEST_CASE("thresholds above the maximal sup leave the function intact") {
    TreeTruncation tree({.q = 2, .depth = 4});
    WeightedMeasure mu(tree);
    Rng rng(2);
    TreeFunction f = random_function(tree, rng);
    KDecomposition kd = k_decompose(f, mu, 2.0, Rational(100));
    CHECK(kd.bad_terms.empty());
    CHECK(kd.h1_bad_bound == 0);
    CHECK(kd.good_sup == linf_norm(f));
}

TEST_CASE("lambda grid spans the natural range") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    Rng rng(8);
    TreeFunction f = random_function(tree, rng);
    auto grid = default_lambda_grid(f, mu, 2.0);
    REQUIRE(!grid.empty());
    CHECK(to_double(grid.front()) ==
          doctest::Approx(lp_norm(f, mu, 2.0) / to_double(mu.total())));
    CHECK(to_double(grid.back()) == doctest::Approx(2.0 * to_double(linf_norm(f))));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("the K upper bound is nondecreasing and concave in t") {
    TreeTruncation tree({.q = 3, .depth = 5, .apex_level = 1});
    WeightedMeasure mu(tree);
    Rng rng(2);
    TreeFunction f = random_dipole_ladder(tree, mu, rng);
    auto grid = default_lambda_grid(f, mu, 2.0);
    auto profile = k_profile(f, mu, 2.0, std::numeric_limits<double>::infinity(), grid);
    double prev = 0;
    for (int e = -8; e <= 8; ++e) {
        double k = k_functional_upper(profile, std::ldexp(1.0, e));
        CHECK(k >= prev);
        prev = k;
    }
}

TEST_CASE("dipole ladders show the square root exponent") {
    TreeTruncation tree({.q = 3, .depth = 5, .apex_level = 1});
    WeightedMeasure mu(tree);
    Rng rng(2);
    TreeFunction f = random_dipole_ladder(tree, mu, rng);
    InterpolationReport rep =
        interpolation_exponent_report(f, mu, 2.0, std::numeric_limits<double>::infinity());
    CHECK(rep.theta == doctest::Approx(0.5));
    CHECK(rep.nondecreasing);
    CHECK(rep.concave);
    CHECK(rep.slope > 0.38);
    CHECK(rep.slope < 0.62);
    CHECK(rep.sup_ratio > 0);
}

TEST_CASE("isotropic noise has no multiscale hierarchy") {
    // contrast ensemble: every scale is equally full, carving never pays,
    // and the K bound rides a single line of slope close to 1
    TreeTruncation tree({.q = 3, .depth = 5});
    WeightedMeasure mu(tree);
    Rng rng(3);
    TreeFunction f = random_isotropic_function(tree, mu, rng, 2.0);
    InterpolationReport rep =
        interpolation_exponent_report(f, mu, 2.0, std::numeric_limits<double>::infinity());
    CHECK(rep.slope > 0.75);
}

TEST_CASE("exponent bookkeeping for other interpolation pairs") {
    TreeTruncation tree({.q = 3, .depth = 4, .apex_level = 1});
    WeightedMeasure mu(tree);
    Rng rng(6);
    TreeFunction f = random_dipole_ladder(tree, mu, rng);

    InterpolationReport r24 = interpolation_exponent_report(f, mu, 2.0, 4.0, -4, 4);
    CHECK(r24.theta == doctest::Approx((1.0 - 0.5) / (1.0 - 0.25)));
    CHECK(r24.nondecreasing);
    CHECK(r24.concave);

    InterpolationReport r33 = interpolation_exponent_report(f, mu, 1.5, 3.0, -4, 4);
    CHECK(r33.theta == doctest::Approx(0.5));
    CHECK(r33.nondecreasing);
    CHECK(r33.concave);
    CHECK(r33.t.size() == 9);
}
