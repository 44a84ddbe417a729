#include "czhardy/cz_sets.hpp"

#include <algorithm>
#include <stdexcept>

#include "czhardy/errors.hpp"

namespace czhardy {

namespace {

long room_below(const TreeTruncation& tree, Vertex v) {
    return tree.depth() - tree.depth_of(v);
}

}  // namespace

AdmissibleTrapezoid make_trapezoid(const TreeTruncation& tree, Vertex root, long h) {
    if (!tree.valid(root)) throw std::out_of_range("make_trapezoid: root outside truncation");
    if (h < 1) throw std::invalid_argument("make_trapezoid: height must be >= 1");
    if (2 * h - 1 > room_below(tree, root))
        throw containment_error("make_trapezoid: band exits the truncation");
    return AdmissibleTrapezoid{root, h, false};
}

AdmissibleTrapezoid make_degenerate_trapezoid(const TreeTruncation& tree, Vertex root) {
    if (!tree.valid(root))
        throw std::out_of_range("make_degenerate_trapezoid: root outside truncation");
    return AdmissibleTrapezoid{root, 1, true};
}

CZSet make_czset(const TreeTruncation& tree, Vertex root, long h, ClipPolicy policy) {
    if (!tree.valid(root)) throw std::out_of_range("make_czset: root outside truncation");
    if (h < 1) throw std::invalid_argument("make_czset: height must be >= 1");
    CZSet S;
    S.root = root;
    S.h = h;
    S.degenerate = false;
    S.band_lo = (h + 1) / 2;
    long full_hi = 4 * h - 1;
    long room = room_below(tree, root);
    if (full_hi <= room) {
        S.band_hi = full_hi;
        S.clipped = false;
    } else {
        if (policy == ClipPolicy::strict)
            throw containment_error("make_czset: band exits the truncation");
        if (S.band_lo > room)
            throw containment_error("make_czset: no band level inside the truncation");
        S.band_hi = room;
        S.clipped = true;
    }
    return S;
}

CZSet make_degenerate_czset(const TreeTruncation& tree, Vertex root) {
    if (!tree.valid(root))
        throw std::out_of_range("make_degenerate_czset: root outside truncation");
    return CZSet{root, 1, true, 0, 0, false};
}

CZSet envelope(const TreeTruncation& tree, const AdmissibleTrapezoid& R, ClipPolicy policy) {
    if (R.degenerate) return make_degenerate_czset(tree, R.root);
    return make_czset(tree, R.root, R.h, policy);
}

Rational width(const WeightedMeasure& mu, const AdmissibleTrapezoid& R) {
    return mu(R.root);
}

Rational width(const WeightedMeasure& mu, const CZSet& S) { return mu(S.root); }

Rational mu_trapezoid(const WeightedMeasure& mu, const AdmissibleTrapezoid& R) {
    if (R.degenerate) return mu(R.root);
    return Rational(R.h) * mu(R.root);
}

Rational mu_czset(const WeightedMeasure& mu, const CZSet& S) {
    if (S.degenerate) return mu(S.root);
    return Rational(S.band_hi - S.band_lo + 1) * mu(S.root);
}

std::uint64_t vertex_count(const TreeTruncation& tree, const AdmissibleTrapezoid& R) {
    if (R.degenerate) return 1;
    std::uint64_t n = 0;
    for (long delta = R.h; delta <= 2 * R.h - 1; ++delta)
        n += tree.descendant_range(R.root, delta).second;
    return n;
}

std::uint64_t vertex_count(const TreeTruncation& tree, const CZSet& S) {
    if (S.degenerate) return 1;
    std::uint64_t n = 0;
    for (long delta = S.band_lo; delta <= S.band_hi; ++delta)
        n += tree.descendant_range(S.root, delta).second;
    return n;
}

std::vector<Vertex> vertices(const TreeTruncation& tree, const AdmissibleTrapezoid& R) {
    std::vector<Vertex> out;
    out.reserve(vertex_count(tree, R));
    for_each_vertex(tree, R, [&](Vertex v) { out.push_back(v); });
    return out;
}

std::vector<Vertex> vertices(const TreeTruncation& tree, const CZSet& S) {
    std::vector<Vertex> out;
    out.reserve(vertex_count(tree, S));
    for_each_vertex(tree, S, [&](Vertex v) { out.push_back(v); });
    return out;
}

bool contains(const TreeTruncation& tree, const AdmissibleTrapezoid& R, Vertex v) {
    if (R.degenerate) return v == R.root;
    long delta = tree.depth_of(v) - tree.depth_of(R.root);
    if (delta < R.h || delta > 2 * R.h - 1) return false;
    return tree.lies_below(v, R.root);
}

bool contains(const TreeTruncation& tree, const CZSet& S, Vertex v) {
    if (S.degenerate) return v == S.root;
    long delta = tree.depth_of(v) - tree.depth_of(S.root);
    if (delta < S.band_lo || delta > S.band_hi) return false;
    return tree.lies_below(v, S.root);
}

bool intersects(const TreeTruncation& tree, const AdmissibleTrapezoid& a,
                const AdmissibleTrapezoid& b) {
    if (a.degenerate && b.degenerate) return a.root == b.root;
    if (a.degenerate) return contains(tree, b, a.root);
    if (b.degenerate) return contains(tree, a, b.root);
    // Bands below incomparable roots never meet.
    const AdmissibleTrapezoid* up = &a;
    const AdmissibleTrapezoid* down = &b;
    if (tree.depth_of(up->root) > tree.depth_of(down->root)) std::swap(up, down);
    if (!tree.lies_below(down->root, up->root)) return false;
    long shift = tree.depth_of(down->root) - tree.depth_of(up->root);
    long lo = std::max(up->h, shift + down->h);
    long hi = std::min(2 * up->h - 1, shift + 2 * down->h - 1);
    return lo <= hi;
}

bool trapezoid_in_czset(const TreeTruncation& tree, const AdmissibleTrapezoid& R,
                        const CZSet& S) {
    if (S.degenerate) return R.degenerate && R.root == S.root;
    if (R.degenerate) return contains(tree, S, R.root);
    if (!tree.lies_below(R.root, S.root)) return false;
    long shift = tree.depth_of(R.root) - tree.depth_of(S.root);
    return shift + R.h >= S.band_lo && shift + 2 * R.h - 1 <= S.band_hi;
}

bool czset_in_czset(const TreeTruncation& tree, const CZSet& a, const CZSet& b) {
    if (b.degenerate) return a.degenerate && a.root == b.root;
    if (a.degenerate) return contains(tree, b, a.root);
    if (!tree.lies_below(a.root, b.root)) return false;
    long shift = tree.depth_of(a.root) - tree.depth_of(b.root);
    return shift + a.band_lo >= b.band_lo && shift + a.band_hi <= b.band_hi;
}

long diameter(const TreeTruncation&, const CZSet& S) {
    if (S.degenerate) return 0;
    return 2 * S.band_hi;
}

std::uint64_t canonical_key(const AdmissibleTrapezoid& R) {
    return (static_cast<std::uint64_t>(R.root.idx) << 8) |
           static_cast<std::uint64_t>(R.degenerate ? 0 : R.h);
}

std::vector<AdmissibleTrapezoid> all_admissible_trapezoids(const TreeTruncation& tree) {
    std::vector<AdmissibleTrapezoid> out;
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex v{i};
        out.push_back(AdmissibleTrapezoid{v, 1, true});
        long room = tree.depth() - tree.depth_of(v);
        for (long h = 1; 2 * h - 1 <= room; ++h)
            out.push_back(AdmissibleTrapezoid{v, h, false});
    }
    return out;
}

std::vector<AdmissibleTrapezoid> trapezoids_within(const TreeTruncation& tree, const CZSet& S) {
    std::vector<AdmissibleTrapezoid> out;
    if (S.degenerate) {
        out.push_back(AdmissibleTrapezoid{S.root, 1, true});
        return out;
    }
    for_each_vertex(tree, S, [&](Vertex v) {
        out.push_back(AdmissibleTrapezoid{v, 1, true});
    });
    // Roots of contained bands sit between the set root and one level above
    // the band bottom.
    for (long shift = 0; shift < S.band_hi; ++shift) {
        auto [first, count] = tree.descendant_range(S.root, shift);
        long h_lo = std::max<long>(1, S.band_lo - shift);
        long h_hi = (S.band_hi - shift + 1) / 2;
        for (std::uint64_t i = 0; i < count; ++i)
            for (long h = h_lo; h <= h_hi; ++h)
                out.push_back(AdmissibleTrapezoid{
                    Vertex{static_cast<std::uint32_t>(first.idx + i)}, h, false});
    }
    std::sort(out.begin(), out.end(),
              [](const AdmissibleTrapezoid& a, const AdmissibleTrapezoid& b) {
                  return canonical_key(a) < canonical_key(b);
              });
    return out;
}

DilatedCZSet dilate(const TreeTruncation& tree, const CZSet& S) {
    DilatedCZSet D;
    D.base = S;
    D.radius = (S.h + 3) / 4 - 1;

    std::vector<char> seen(tree.vertex_count(), 0);
    std::vector<Vertex> frontier = vertices(tree, S);
    for (Vertex v : frontier) seen[v.idx] = 1;
    D.members = frontier;
    for (long step = 0; step < D.radius; ++step) {
        std::vector<Vertex> next;
        for (Vertex v : frontier) {
            for (Vertex n : tree.neighbors(v)) {
                if (!seen[n.idx]) {
                    seen[n.idx] = 1;
                    next.push_back(n);
                }
            }
        }
        D.members.insert(D.members.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(D.members.begin(), D.members.end());

    // The dilate can only leak past the bottom level: the apex side is
    // shielded because ceil(h/2) always exceeds the dilation radius.
    D.interior = S.interior() &&
                 tree.depth_of(S.root) + S.band_hi + D.radius <= tree.depth();
    return D;
}

Rational mu_dilated(const WeightedMeasure& mu, const DilatedCZSet& D) {
    Rational out(0);
    for (Vertex v : D.members) out += mu(v);
    return out;
}

MeasurePair envelope_measure_check(const WeightedMeasure& mu, const AdmissibleTrapezoid& R,
                                   ClipPolicy policy) {
    CZSet S = envelope(mu.tree(), R, policy);
    return MeasurePair{mu_czset(mu, S), Rational(4) * mu_trapezoid(mu, R)};
}

bool inclusion_lemma_check(const TreeTruncation& tree, const WeightedMeasure& mu,
                           const AdmissibleTrapezoid& a, const AdmissibleTrapezoid& b) {
    if (!intersects(tree, a, b)) return true;
    if (width(mu, a) < width(mu, b)) return true;
    CZSet env = envelope(tree, a, ClipPolicy::clip);
    if (b.degenerate) return contains(tree, env, b.root);
    if (!tree.lies_below(b.root, a.root)) return false;
    long shift = tree.depth_of(b.root) - tree.depth_of(a.root);
    return shift + b.h >= env.band_lo && shift + 2 * b.h - 1 <= env.band_hi;
}

bool diameter_bound_check(const TreeTruncation& tree, const CZSet& S) {
    return diameter(tree, S) <= 8 * S.h - 2;
}

Rational dilate_measure_ratio(const WeightedMeasure& mu, const TreeTruncation& tree,
                              const CZSet& S) {
    DilatedCZSet D = dilate(tree, S);
    return mu_dilated(mu, D) / mu_czset(mu, S);
}

}  // namespace czhardy
