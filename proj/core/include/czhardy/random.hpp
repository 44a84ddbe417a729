#pragma once

#include <cstdint>

#include "czhardy/hardy.hpp"

namespace czhardy {

// xoshiro256** seeded through splitmix64.  Self-contained so that reports are
// reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);  // unbiased in [0, bound)
    long range(long lo, long hi);              // inclusive
    double unit();                             // [0, 1)
    Rational dyadic(int bits);                 // k / 2^bits, k in [0, 2^bits)
    Rational dyadic_symmetric(int bits);       // in [-1, 1]

  private:
    std::uint64_t s_[4];
};

// Dense function with independent dyadic values in [-1, 1].
TreeFunction random_function(const TreeTruncation& tree, Rng& rng, int bits = 12);

// Sparse variant: `count` distinct vertices drawn at the prescribed depth
// (whole tree when depth < 0), others zero.
TreeFunction random_sparse_function(const TreeTruncation& tree, Rng& rng, std::size_t count,
                                    long depth = -1, int bits = 12);

// Isotropic noise in the L^p(mu) geometry: value at v is a dyadic draw scaled
// by mu(v)^(-1/p) (dyadically rounded), so every vertex contributes comparably
// to ||f||_p^p.  These saturate the K-functional growth rate.
TreeFunction random_isotropic_function(const TreeTruncation& tree, const WeightedMeasure& mu,
                                       Rng& rng, double p = 2.0, int bits = 12);

// Exact (1,inf)-atom on a uniformly chosen CZ set: dyadic values recentred to
// mean zero and rescaled so the size condition holds with equality.
Atom random_atom(const TreeTruncation& tree, const WeightedMeasure& mu, Rng& rng);

// Atom on the envelope of a uniformly chosen admissible trapezoid with
// ||a||_p = mu(S)^(1/p-1) exactly, for integer p >= 2.
Atom random_atom_p(const TreeTruncation& tree, const WeightedMeasure& mu, Rng& rng,
                   unsigned long p);

// One mean-zero sibling dipole per depth, at a random parent, with height
// xi * mu(envelope)^(-1/2), xi in [1/2, 3/2].  The heights make every scale
// contribute comparably, the discrete analogue of a decreasing rearrangement
// ~ s^(-1/2), so K-functional profiles sweep their full multiscale range.
TreeFunction random_dipole_ladder(const TreeTruncation& tree, const WeightedMeasure& mu,
                                  Rng& rng);

}  // namespace czhardy
