#pragma once

#include <cstdint>
#include <vector>

#include "czhardy/measure.hpp"
#include "czhardy/rational.hpp"
#include "czhardy/tree.hpp"

namespace czhardy {

// Admissible trapezoid: either the band { x below root : h <= depth gap < 2h }
// or the degenerate singleton { root } (which carries h = 1).  Constructors
// require the whole band to lie inside the truncation.
struct AdmissibleTrapezoid {
    Vertex root;
    long h = 1;
    bool degenerate = false;
};

// Calderon-Zygmund set: the envelope band
//   { x below root : ceil(h/2) <= depth gap <= 4h - 1 },
// or a degenerate singleton.  band_hi is clipped at the truncation bottom;
// clipped envelopes arise inside decompositions near the boundary and carry
// the flag so callers that need the full band can reject them.
struct CZSet {
    Vertex root;
    long h = 1;
    bool degenerate = false;
    long band_lo = 0;
    long band_hi = 0;
    bool clipped = false;

    bool interior() const { return !clipped; }
};

enum class ClipPolicy { strict, clip };

AdmissibleTrapezoid make_trapezoid(const TreeTruncation& tree, Vertex root, long h);
AdmissibleTrapezoid make_degenerate_trapezoid(const TreeTruncation& tree, Vertex root);

CZSet envelope(const TreeTruncation& tree, const AdmissibleTrapezoid& R,
               ClipPolicy policy = ClipPolicy::strict);
// CZ set with a prescribed root and height, not tied to a trapezoid.
CZSet make_czset(const TreeTruncation& tree, Vertex root, long h,
                 ClipPolicy policy = ClipPolicy::strict);
CZSet make_degenerate_czset(const TreeTruncation& tree, Vertex root);

// Width w = q^level(root), shared by a trapezoid and its envelope.
Rational width(const WeightedMeasure& mu, const AdmissibleTrapezoid& R);
Rational width(const WeightedMeasure& mu, const CZSet& S);

// mu(R) = h * w for the band (each full level below the root has measure w).
Rational mu_trapezoid(const WeightedMeasure& mu, const AdmissibleTrapezoid& R);
Rational mu_czset(const WeightedMeasure& mu, const CZSet& S);

std::uint64_t vertex_count(const TreeTruncation& tree, const AdmissibleTrapezoid& R);
std::uint64_t vertex_count(const TreeTruncation& tree, const CZSet& S);

std::vector<Vertex> vertices(const TreeTruncation& tree, const AdmissibleTrapezoid& R);
std::vector<Vertex> vertices(const TreeTruncation& tree, const CZSet& S);

bool contains(const TreeTruncation& tree, const AdmissibleTrapezoid& R, Vertex v);
bool contains(const TreeTruncation& tree, const CZSet& S, Vertex v);
bool intersects(const TreeTruncation& tree, const AdmissibleTrapezoid& a,
                const AdmissibleTrapezoid& b);
// R subseteq S as vertex sets.
bool trapezoid_in_czset(const TreeTruncation& tree, const AdmissibleTrapezoid& R,
                        const CZSet& S);
bool czset_in_czset(const TreeTruncation& tree, const CZSet& a, const CZSet& b);

// Exact diameter of the envelope band (0 for singletons).  The deepest band
// level always meets at least two child subtrees of the root, so the
// diameter is twice the band bottom.
long diameter(const TreeTruncation& tree, const CZSet& S);

// Canonical ordering of trapezoids: lexicographic by (root index, h), with a
// degenerate trapezoid sorting before the bands at the same root (h code 0).
std::uint64_t canonical_key(const AdmissibleTrapezoid& R);

// All admissible trapezoids inside the truncation, in canonical order.
std::vector<AdmissibleTrapezoid> all_admissible_trapezoids(const TreeTruncation& tree);
// All admissible trapezoids whose vertex set lies inside S, in canonical order.
std::vector<AdmissibleTrapezoid> trapezoids_within(const TreeTruncation& tree, const CZSet& S);

// Dilated set { x : d(x, S) < h/4 }; equals S whenever h <= 4.
struct DilatedCZSet {
    CZSet base;
    long radius = 0;  // largest admitted distance, ceil(h/4) - 1
    std::vector<Vertex> members;
    // True iff the dilate taken in the infinite tree stays inside the
    // truncation (it can only leak past the bottom level).
    bool interior = false;
};

DilatedCZSet dilate(const TreeTruncation& tree, const CZSet& S);
Rational mu_dilated(const WeightedMeasure& mu, const DilatedCZSet& D);

// --- executable forms of the geometric lemmas, all exact ---

// mu(envelope) <= 4 mu(R); returns the two sides.
struct MeasurePair {
    Rational lhs;
    Rational rhs;
    bool holds() const { return lhs <= rhs; }
};
MeasurePair envelope_measure_check(const WeightedMeasure& mu, const AdmissibleTrapezoid& R,
                                   ClipPolicy policy = ClipPolicy::strict);

// If a and b intersect and width(a) >= width(b), then b is contained in the
// envelope of a.  Returns true when the implication holds (vacuously true
// when the hypothesis fails).
bool inclusion_lemma_check(const TreeTruncation& tree, const WeightedMeasure& mu,
                           const AdmissibleTrapezoid& a, const AdmissibleTrapezoid& b);

// diameter(envelope) <= 8h - 2, checked against exhaustive pair distances.
bool diameter_bound_check(const TreeTruncation& tree, const CZSet& S);

// mu(dilate) / mu(envelope), exact.
Rational dilate_measure_ratio(const WeightedMeasure& mu, const TreeTruncation& tree,
                              const CZSet& S);

// Iteration helpers, one full level at a time.
template <typename F>
void for_each_vertex(const TreeTruncation& tree, const AdmissibleTrapezoid& R, F&& fn) {
    if (R.degenerate) {
        fn(R.root);
        return;
    }
    for (long delta = R.h; delta <= 2 * R.h - 1; ++delta) {
        auto [first, count] = tree.descendant_range(R.root, delta);
        for (std::uint64_t i = 0; i < count; ++i)
            fn(Vertex{static_cast<std::uint32_t>(first.idx + i)});
    }
}

template <typename F>
void for_each_vertex(const TreeTruncation& tree, const CZSet& S, F&& fn) {
    if (S.degenerate) {
        fn(S.root);
        return;
    }
    for (long delta = S.band_lo; delta <= S.band_hi; ++delta) {
        auto [first, count] = tree.descendant_range(S.root, delta);
        for (std::uint64_t i = 0; i < count; ++i)
            fn(Vertex{static_cast<std::uint32_t>(first.idx + i)});
    }
}

}  // namespace czhardy
