#include <doctest.h>

#include <cmath>

#include "czhardy/operators.hpp"
#include "czhardy/random.hpp"

using namespace czhardy;

TEST_CASE("the Laplacian annihilates constants away from the boundary") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    OperatorMatrix L = laplacian(tree, mu);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(tree.vertex_count());
    Eigen::VectorXd img = apply(L, mu, ones);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex v{i};
        bool interior = tree.has_parent(v) && !tree.is_leaf(v);
        if (interior)
            CHECK(std::abs(img(i)) < 1e-12);
        else
            CHECK(img(i) > 0);  // Dirichlet truncation drops mass at the boundary
    }
}

TEST_CASE("symmetrization conjugates the kernel") {
    TreeTruncation tree({.q = 2, .depth = 4});
    WeightedMeasure mu(tree);
    OperatorMatrix L = laplacian(tree, mu);
    Eigen::MatrixXd S = symmetrized_laplacian(tree);
    Eigen::VectorXd mv = mu_vector(mu);
    double worst = 0;
    for (Eigen::Index x = 0; x < S.rows(); ++x)
        for (Eigen::Index y = 0; y < S.cols(); ++y) {
            double conj = std::sqrt(mv(x)) * L.kernel(x, y) * mv(y) / std::sqrt(mv(y));
            worst = std::max(worst, std::abs(S(x, y) - conj));
        }
    CHECK(worst < 1e-12);
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectral calculus reproduces the generator and the identity") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);

    OperatorMatrix id = sys.multiplier_kernel([](double) { return 1.0; });
    OperatorMatrix id_direct = identity_kernel(tree, mu);
    CHECK((id.kernel - id_direct.kernel).cwiseAbs().maxCoeff() < 1e-10);

    OperatorMatrix lam = sys.multiplier_kernel([](double x) { return x; });
    OperatorMatrix L = laplacian(tree, mu);
    CHECK((lam.kernel - L.kernel).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("heat kernel matches its Taylor series and the semigroup law") {
    TreeTruncation tree({.q = 2, .depth = 5});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix L = laplacian(tree, mu);
    OperatorMatrix heat = sys.multiplier_kernel(heat_multiplier(1.0));

    // exp(-L) by the series sum_k (-1)^k L^k / k!, applied to a vector
    Rng rng(12);
    Eigen::VectorXd f(tree.vertex_count());
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) f(i) = 2 * rng.unit() - 1;
    Eigen::VectorXd series = f, term = f;
    for (int k = 1; k <= 30; ++k) {
        term = -apply(L, mu, term) / k;
        series += term;
    }
    CHECK((apply(heat, mu, f) - series).cwiseAbs().maxCoeff() < 1e-8);

    // e^{-L/2} twice equals e^{-L}
    Eigen::VectorXd half = sys.apply_multiplier(heat_multiplier(0.5), f);
    Eigen::VectorXd twice = sys.apply_multiplier(heat_multiplier(0.5), half);
    CHECK((apply(heat, mu, f) - twice).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("imaginary powers have unit modulus on the spectrum") {
    auto re = imaginary_power_real(1.7);
    auto im = imaginary_power_imag(1.7);
    for (double lam : {0.05, 0.5, 1.0, 1.9}) {
        double mod = re(lam) * re(lam) + im(lam) * im(lam);
        CHECK(mod == doctest::Approx(1.0));
    }
    CHECK(re(0.0) == 0.0);
    CHECK(im(0.0) == 0.0);
}

TEST_CASE("spectrum sits strictly inside (0,2) and tightens with depth") {
    double prev_lo = 1, prev_hi = 1;
    for (long d : {3L, 4L, 5L}) {
        TreeTruncation tree({.q = 2, .depth = d});
        WeightedMeasure mu(tree);
        SpectralSystem sys(tree, mu);
        CHECK(sys.min_eigenvalue() > 0);
        CHECK(sys.max_eigenvalue() < 2);
        CHECK(std::abs(sys.min_eigenvalue() + sys.max_eigenvalue() - 2) < 1e-9);  // bipartite
        if (d > 3) {
            CHECK(sys.min_eigenvalue() < prev_lo);
            CHECK(sys.max_eigenvalue() > prev_hi);
        }
        prev_lo = sys.min_eigenvalue();
        prev_hi = sys.max_eigenvalue();
    }
}

TEST_CASE("gradient counts unit steps of the level function") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    TreeFunction lev(tree);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        lev.at_index(i) = Rational(tree.level(Vertex{i}));
    TreeFunction g = gradient(lev);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        CHECK(g.at_index(i) == tree.neighbor_count(Vertex{i}));
}

TEST_CASE("riesz is the gradient of the inverse square root") {
    TreeTruncation tree({.q = 2, .depth = 4});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    Rng rng(5);
    Eigen::VectorXd f(tree.vertex_count());
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) f(i) = 2 * rng.unit() - 1;
    Eigen::VectorXd isqrt =
        sys.apply_multiplier([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, f);
    Eigen::VectorXd expect = gradient(tree, isqrt);
    CHECK((sys.riesz(f) - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("hormander integral vanishes on the diagonal and rejects outsiders") {
    TreeTruncation tree({.q = 3, .depth = 5});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix heat = sys.multiplier_kernel(heat_multiplier(1.0));
    CZSet S = make_czset(tree, tree.apex(), 1);
    Vertex y = tree.child(tree.apex(), 0);
    CHECK(hormander_integral(heat, mu, S, y, y) == 0.0);
    Vertex outside{tree.first_index_at_depth(4)};
    CHECK_THROWS(hormander_integral(heat, mu, S, y, outside));
}

TEST_CASE("hormander sweep covers sets and pairs and finds its argmax") {
    TreeTruncation tree({.q = 2, .depth = 5});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix heat = sys.multiplier_kernel(heat_multiplier(1.0));
    HormanderSweep sweep = hormander_sweep(heat, tree, mu);
    CHECK(sweep.sets > 0);
    CHECK(sweep.pairs > 0);
    CHECK(sweep.sup > 0);
    // replay the winner
    CZSet S = make_czset(tree, Vertex{sweep.root}, sweep.h);
    double replay = hormander_integral(heat, mu, S, Vertex{sweep.y}, Vertex{sweep.z});
    CHECK(replay == doctest::Approx(sweep.sup));
}

TEST_CASE("kernel and action variants of the atom ratio agree") {
    TreeTruncation tree({.q = 3, .depth = 4});
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix heat = sys.multiplier_kernel(heat_multiplier(1.0));
    Rng rng(42);
    std::vector<Atom> atoms;
    for (int i = 0; i < 25; ++i) atoms.push_back(random_atom(tree, mu, rng));
    AtomApplyReport by_kernel = h1_to_l1_ratio(heat, mu, atoms);
    AtomApplyReport by_action = h1_to_l1_ratio(
        [&](const Eigen::VectorXd& v) { return apply(heat, mu, v); }, mu, atoms);
    CHECK(by_kernel.max_l1 == doctest::Approx(by_action.max_l1).epsilon(1e-10));
    CHECK(by_kernel.atoms == 25);
    // the certificate pieces bound the inside of the sup
    CHECK(by_kernel.max_inside > 0);
    CHECK(by_kernel.max_tail > 0);
}

TEST_CASE("mikhlin estimator separates smooth from rough multipliers") {
    MikhlinReport zero = mikhlin_hormander_estimate([](double) { return 0.0; }, 2.0, 512);
    CHECK(zero.grid_max == 0.0);
    CHECK(!zero.outside_hypothesis);

    MikhlinReport low = mikhlin_hormander_estimate(heat_multiplier(1.0), 1.0, 512);
    CHECK(low.outside_hypothesis);  // s <= 3/2 is outside the theorem

    // imaginary powers stiffen with |s0|
    double a = mikhlin_hormander_estimate(imaginary_power_real(1.0), 2.0, 1024).grid_max;
    double b = mikhlin_hormander_estimate(imaginary_power_real(4.0), 2.0, 1024).grid_max;
    CHECK(b > a);

    // a jump multiplier has divergent Sobolev mass as resolution grows
    auto step = [](double lam) { return lam < 1.0 ? 0.0 : 1.0; };
    double coarse = mikhlin_hormander_estimate(step, 2.0, 1024).grid_max;
    double fine = mikhlin_hormander_estimate(step, 2.0, 8192).grid_max;
    CHECK(fine > 1.5 * coarse);
}
