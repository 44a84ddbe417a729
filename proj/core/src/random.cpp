#include "czhardy/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace czhardy {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
}

std::uint64_t Rng::next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

long Rng::range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rational Rng::dyadic(int bits) {
    Rational out(static_cast<unsigned long>(below(std::uint64_t{1} << bits)));
    return out / rational_pow(2, bits);
}

Rational Rng::dyadic_symmetric(int bits) {
    long k = static_cast<long>(below((std::uint64_t{2} << bits) + 1)) - (1L << bits);
    return Rational(k) / rational_pow(2, bits);
}

TreeFunction random_function(const TreeTruncation& tree, Rng& rng, int bits) {
    TreeFunction f(tree);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        f.at_index(i) = rng.dyadic_symmetric(bits);
    return f;
}

TreeFunction random_sparse_function(const TreeTruncation& tree, Rng& rng, std::size_t count,
                                    long depth, int bits) {
    TreeFunction f(tree);
    std::uint32_t lo = 0, n = tree.vertex_count();
    if (depth >= 0) {
        lo = tree.first_index_at_depth(depth);
        n = tree.vertices_at_depth(depth);
    }
    count = std::min<std::size_t>(count, n);
    for (std::size_t placed = 0; placed < count;) {
        std::uint32_t i = lo + static_cast<std::uint32_t>(rng.below(n));
        if (f.at_index(i) != 0) continue;
        Rational v = rng.dyadic_symmetric(bits);
        if (v == 0) continue;
        f.at_index(i) = v;
        ++placed;
    }
    return f;
}

TreeFunction random_isotropic_function(const TreeTruncation& tree, const WeightedMeasure& mu,
                                       Rng& rng, double p, int bits) {
    if (!(p > 0)) throw std::invalid_argument("p must be positive");
    TreeFunction f(tree);
    std::vector<Rational> scale(static_cast<std::size_t>(tree.depth()) + 1);
    for (long d = 0; d <= tree.depth(); ++d)
        scale[d] = rational_from_double(
            std::pow(to_double(mu.weight_at_depth(d)), -1.0 / p));
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        f.at_index(i) = rng.dyadic_symmetric(bits) * scale[tree.depth_of(Vertex{i})];
    return f;
}

namespace {

// Mean-zero dyadic profile on S, redrawn until nonzero.
TreeFunction centred_profile(const TreeTruncation& tree, const WeightedMeasure& mu,
                             const CZSet& S, Rng& rng) {
    for (;;) {
        TreeFunction u(tree);
        Rational integral(0);
        for_each_vertex(tree, S, [&](Vertex v) {
            u[v] = rng.dyadic_symmetric(10);
            integral += u[v] * mu(v);
        });
        Rational mean = integral / mu_czset(mu, S);
        bool nonzero = false;
        for_each_vertex(tree, S, [&](Vertex v) {
            u[v] -= mean;
            if (u[v] != 0) nonzero = true;
        });
        if (nonzero) return u;
    }
}

CZSet random_czset(const TreeTruncation& tree, Rng& rng) {
    // Envelope of a uniform non-degenerate admissible trapezoid.
    std::vector<AdmissibleTrapezoid> all = all_admissible_trapezoids(tree);
    std::vector<AdmissibleTrapezoid> bands;
    for (const auto& R : all)
        if (!R.degenerate) bands.push_back(R);
    if (bands.empty()) throw std::domain_error("truncation too shallow for atoms");
    return envelope(tree, bands[rng.below(bands.size())], ClipPolicy::clip);
}

}  // namespace

Atom random_atom(const TreeTruncation& tree, const WeightedMeasure& mu, Rng& rng) {
    CZSet S = random_czset(tree, rng);
    TreeFunction u = centred_profile(tree, mu, S, rng);
    Rational sup(0);
    for_each_vertex(tree, S, [&](Vertex v) {
        Rational a = abs(u[v]);
        if (a > sup) sup = a;
    });
    Atom a{S, (Rational(1) / (sup * mu_czset(mu, S))) * u,
           std::numeric_limits<double>::infinity()};
    return a;
}

TreeFunction random_dipole_ladder(const TreeTruncation& tree, const WeightedMeasure& mu,
                                  Rng& rng) {
    TreeFunction f(tree);
    for (long d = 1; d <= tree.depth(); ++d) {
        std::uint32_t first = tree.first_index_at_depth(d - 1);
        Vertex parent{first + static_cast<std::uint32_t>(rng.below(tree.vertices_at_depth(d - 1)))};
        long k1 = static_cast<long>(rng.below(static_cast<std::uint64_t>(tree.q())));
        long k2 = static_cast<long>(rng.below(static_cast<std::uint64_t>(tree.q() - 1)));
        if (k2 >= k1) ++k2;
        Rational m = mu_czset(mu, make_czset(tree, parent, 1, ClipPolicy::clip));
        Rational c = (Rational(1) + rng.dyadic_symmetric(8) / 2) *
                     rational_from_double(std::pow(to_double(m), -0.5));
        f[tree.child(parent, k1)] += c;
        f[tree.child(parent, k2)] -= c;
    }
    return f;
}

Atom random_atom_p(const TreeTruncation& tree, const WeightedMeasure& mu, Rng& rng,
                   unsigned long p) {
    if (p < 2) throw std::invalid_argument("finite atom exponent must be >= 2");
    CZSet S = random_czset(tree, rng);
    TreeFunction u = centred_profile(tree, mu, S, rng);
    // Largest rational s with (s ||u||_p)^p <= mu(S)^(1-p), found by binary
    // refinement of the dyadic mantissa; the size condition then holds exactly
    // with slack below 2^-40.
    Rational target = Rational(1) / pow_int(mu_czset(mu, S), p - 1);
    Rational upp = lp_norm_pow(u, mu, p);
    Rational lo(0), hi(1);
    while (pow_int(hi, p) * upp <= target) hi *= 2;
    for (int it = 0; it < 60; ++it) {
        Rational mid = (lo + hi) / 2;
        (pow_int(mid, p) * upp <= target ? lo : hi) = mid;
    }
    Atom a{S, lo * u, static_cast<double>(p)};
    return a;
}

}  // namespace czhardy
