#include "czhardy/maximal.hpp"

#include <algorithm>
#include <stdexcept>

namespace czhardy {

BandIntegrals::BandIntegrals(const TreeFunction& density, const WeightedMeasure& mu)
    : tree_(&density.tree()) {
    const TreeTruncation& tree = *tree_;
    const std::uint32_t n = tree.vertex_count();
    prefix_.resize(n);
    for (std::uint32_t i = n; i-- > 0;) {
        Vertex v{i};
        long room = tree.depth() - tree.depth_of(v);
        auto& row = prefix_[i];
        row.assign(static_cast<std::size_t>(room) + 1, Rational(0));
        row[0] = density[v] * mu(v);
        if (tree.is_leaf(v)) continue;
        for (long k = 0; k < tree.q(); ++k) {
            const auto& child_row = prefix_[tree.child(v, k).idx];
            for (std::size_t j = 0; j < child_row.size(); ++j) row[j + 1] += child_row[j];
        }
    }
    // Rows currently hold per-level integrals; fold into prefix sums.
    for (auto& row : prefix_) {
        for (std::size_t j = 1; j < row.size(); ++j) row[j] += row[j - 1];
    }
    total_ = prefix_[0].back();
}

Rational BandIntegrals::band(Vertex v, long lo, long hi) const {
    const auto& row = prefix_[v.idx];
    long room = static_cast<long>(row.size()) - 1;
    hi = std::min(hi, room);
    lo = std::max(lo, 0L);
    if (lo > hi) return Rational(0);
    Rational out = row[hi];
    if (lo > 0) out -= row[lo - 1];
    return out;
}

Rational BandIntegrals::over(const AdmissibleTrapezoid& R) const {
    if (R.degenerate) return band(R.root, 0, 0);
    return band(R.root, R.h, 2 * R.h - 1);
}

namespace {

Rational abs_rational(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

TreeFunction maximal_of_density(const TreeFunction& density, const WeightedMeasure& mu) {
    const TreeTruncation& tree = density.tree();
    BandIntegrals bi(density, mu);
    TreeFunction out(tree);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex x{i};
        Rational best = density[x];
        Vertex root = x;
        for (long delta = 1; delta <= tree.depth_of(x); ++delta) {
            root = tree.parent(root);
            long room = tree.depth() - tree.depth_of(root);
            long h_hi = std::min(delta, (room + 1) / 2);
            for (long h = delta / 2 + 1; h <= h_hi; ++h) {
                Rational avg = bi.band(root, h, 2 * h - 1) /
                               (Rational(h) * mu.weight_at_depth(tree.depth_of(root)));
                if (avg > best) best = avg;
            }
        }
        out[x] = best;
    }
    return out;
}

TreeFunction maximal_of_density_restricted(const TreeFunction& density,
                                           const WeightedMeasure& mu, const CZSet& Q) {
    const TreeTruncation& tree = density.tree();
    BandIntegrals bi(density, mu);
    TreeFunction out(tree);
    long dq = tree.depth_of(Q.root);
    for_each_vertex(tree, Q, [&](Vertex x) {
        Rational best = density[x];
        Vertex root = x;
        for (long delta = 1; delta <= tree.depth_of(x) - dq; ++delta) {
            root = tree.parent(root);
            long shift = tree.depth_of(root) - dq;
            long h_lo = std::max(delta / 2 + 1, Q.band_lo - shift);
            long h_hi = std::min(delta, (Q.band_hi - shift + 1) / 2);
            for (long h = h_lo; h <= h_hi; ++h) {
                Rational avg = bi.band(root, h, 2 * h - 1) /
                               (Rational(h) * mu.weight_at_depth(tree.depth_of(root)));
                if (avg > best) best = avg;
            }
        }
        out[x] = best;
    });
    return out;
}

TreeFunction maximal_function(const TreeFunction& f, const WeightedMeasure& mu) {
    TreeFunction g(f.tree());
    for (std::uint32_t i = 0; i < f.size(); ++i) g.at_index(i) = abs_rational(f.at_index(i));
    return maximal_of_density(g, mu);
}

TreeFunction maximal_function_restricted(const TreeFunction& f, const WeightedMeasure& mu,
                                         const CZSet& Q) {
    TreeFunction g(f.tree());
    for (std::uint32_t i = 0; i < f.size(); ++i) g.at_index(i) = abs_rational(f.at_index(i));
    return maximal_of_density_restricted(g, mu, Q);
}

CoveringResult cz_covering_density(const TreeFunction& density, const WeightedMeasure& mu,
                                   const Rational& threshold_pow, const CZSet* Q) {
    const TreeTruncation& tree = density.tree();
    if (threshold_pow <= 0) throw std::invalid_argument("covering threshold must be positive");

    BandIntegrals bi(density, mu);
    CoveringResult res;
    res.threshold_pow = threshold_pow;
    res.total_density =
        Q ? (Q->degenerate ? bi.band(Q->root, 0, 0) : bi.band(Q->root, Q->band_lo, Q->band_hi))
          : bi.total();

    // Candidate trapezoids with average >= threshold.  Canonical enumeration
    // is already sorted by decreasing width because index order is
    // depth-major, so the greedy scan needs no extra sort.
    std::vector<AdmissibleTrapezoid> stock =
        Q ? trapezoids_within(tree, *Q) : all_admissible_trapezoids(tree);
    std::vector<AdmissibleTrapezoid> s0;
    for (const auto& R : stock) {
        if (bi.over(R) >= threshold_pow * mu_trapezoid(mu, R)) s0.push_back(R);
    }
    res.candidate_count = s0.size();

    for (const auto& R : s0) {
        bool clear = true;
        for (const auto& sel : res.selected) {
            if (intersects(tree, sel, R)) {
                clear = false;
                break;
            }
        }
        if (clear) res.selected.push_back(R);
    }

    res.sum_mu_selected = 0;
    res.sum_mu_envelopes = 0;
    for (const auto& R : res.selected) {
        res.envelopes.push_back(envelope(tree, R, ClipPolicy::clip));
        res.sum_mu_selected += mu_trapezoid(mu, R);
        res.sum_mu_envelopes += mu_czset(mu, res.envelopes.back());
    }

    TreeFunction mf = Q ? maximal_of_density_restricted(density, mu, *Q)
                        : maximal_of_density(density, mu);
    res.level_set.assign(tree.vertex_count(), 0);
    res.mu_level_set = 0;
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        if (mf.at_index(i) > threshold_pow) {
            res.level_set[i] = 1;
            res.mu_level_set += mu.weight_at_depth(tree.depth_of(Vertex{i}));
        }
    }

    std::vector<char> painted(tree.vertex_count(), 0);
    res.mu_union_envelopes = 0;
    for (const auto& env : res.envelopes) {
        for_each_vertex(tree, env, [&](Vertex v) {
            if (!painted[v.idx]) {
                painted[v.idx] = 1;
                res.mu_union_envelopes += mu.weight_at_depth(tree.depth_of(v));
            }
        });
    }

    res.level_set_covered = true;
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        if (res.level_set[i] && !painted[i]) {
            res.level_set_covered = false;
            break;
        }
    }

    res.disjoint = true;
    for (std::size_t a = 0; a < res.selected.size() && res.disjoint; ++a) {
        for (std::size_t b = a + 1; b < res.selected.size(); ++b) {
            if (intersects(tree, res.selected[a], res.selected[b])) {
                res.disjoint = false;
                break;
            }
        }
    }

    res.candidates_dominated = true;
    for (const auto& R : s0) {
        bool dominated = false;
        for (const auto& sel : res.selected) {
            if (tree.depth_of(sel.root) <= tree.depth_of(R.root) && intersects(tree, sel, R)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            res.candidates_dominated = false;
            break;
        }
    }

    res.mass_bound = threshold_pow * res.sum_mu_selected <= res.total_density;
    res.envelope_bound = res.sum_mu_envelopes <= Rational(4) * res.sum_mu_selected;
    return res;
}

CoveringResult cz_covering(const TreeFunction& f, const WeightedMeasure& mu, unsigned long p,
                           const Rational& lambda) {
    if (p < 1) throw std::invalid_argument("exponent p must be at least 1");
    if (lambda <= 0) throw std::invalid_argument("covering level must be positive");
    return cz_covering_density(abs_pow(f, p), mu, pow_int(lambda, p), nullptr);
}

CoveringResult cz_covering_restricted(const TreeFunction& f, const WeightedMeasure& mu,
                                      unsigned long p, const Rational& lambda, const CZSet& Q) {
    if (p < 1) throw std::invalid_argument("exponent p must be at least 1");
    if (lambda <= 0) throw std::invalid_argument("covering level must be positive");
    return cz_covering_density(abs_pow(f, p), mu, pow_int(lambda, p), &Q);
}

}  // namespace czhardy
