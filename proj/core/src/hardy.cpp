#include "czhardy/hardy.hpp"

#include <cmath>
#include <stdexcept>

namespace czhardy {

namespace {

Rational abs_r(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Rational B with B^p >= value_pow, within a 2^-10 relative sliver of the real
// root.  Used to normalize atoms by irrational bounds without leaving Q.
Rational rational_upper_root(const Rational& value_pow, unsigned long p) {
    if (value_pow <= 0) return Rational(0);
    if (p == 1) return value_pow;
    double est = std::pow(to_double(value_pow), 1.0 / static_cast<double>(p));
    Rational B = rational_from_double(est * (1.0 + 1e-9));
    if (B <= 0) B = Rational(1, 1000000);
    while (pow_int(B, p) < value_pow) B *= Rational(1025, 1024);
    return B;
}

// Conservative counterpart: B^p <= value_pow, so inequalities certified
// against B imply the true irrational-root bound.
Rational rational_lower_root(const Rational& value_pow, unsigned long p) {
    if (value_pow <= 0) return Rational(0);
    if (p == 1) return value_pow;
    double est = std::pow(to_double(value_pow), 1.0 / static_cast<double>(p));
    Rational B = rational_from_double(est * (1.0 - 1e-9));
    if (B <= 0) return Rational(0);
    while (pow_int(B, p) > value_pow) B *= Rational(1023, 1024);
    return B;
}

}  // namespace

AtomCheck validate_atom(const Atom& a, const WeightedMeasure& mu) {
    const TreeTruncation& tree = a.values.tree();
    AtomCheck out;

    out.supported = true;
    std::vector<char> inside(tree.vertex_count(), 0);
    for_each_vertex(tree, a.support, [&](Vertex v) { inside[v.idx] = 1; });
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        if (!inside[i] && a.values.at_index(i) != 0) {
            out.supported = false;
            break;
        }
    }

    out.mean_integral = integral(a.values, mu);
    out.mean_zero = out.mean_integral == 0;

    Rational muS = mu_czset(mu, a.support);
    if (std::isinf(a.p)) {
        Rational lhs = linf_norm(a.values) * muS;
        out.size_ok = lhs <= 1;
        out.size_ratio = to_double(lhs);
    } else if (a.p > 1 && a.p == std::floor(a.p) && a.p < 64) {
        auto ip = static_cast<unsigned long>(a.p);
        Rational lhs = lp_norm_pow(a.values, mu, ip) * pow_int(muS, ip - 1);
        out.size_ok = lhs <= 1;
        out.size_ratio = std::pow(to_double(lhs), 1.0 / a.p);
    } else {
        double lhs = lp_norm(a.values, mu, a.p) * std::pow(to_double(muS), 1.0 - 1.0 / a.p);
        out.size_ok = lhs <= 1.0 + 1e-9;
        out.size_ratio = lhs;
    }
    return out;
}

bool alpha_admissible(const Rational& alpha, long q, unsigned long p) {
    if (p < 2 || alpha <= 0) return false;
    Rational crit = rational_pow(2, static_cast<long>(p) - 1) * Rational(24 * q) *
                    (Rational(1) + rational_pow(4, static_cast<long>(p)));
    return pow_int(alpha, p - 1) > crit;
}

Rational default_alpha(long q, unsigned long p) {
    Rational base = Rational(24 * q) * (Rational(1) + rational_pow(4, static_cast<long>(p)));
    return Rational(4) * rational_upper_root(base, p - 1);
}

double series_constant(long q, unsigned long p, const Rational& alpha) {
    double a = to_double(alpha);
    double pd = static_cast<double>(p);
    double W = std::pow(2.0, pd - 1.0) * 6.0 * static_cast<double>(q) *
               (1.0 + std::pow(4.0, pd));
    double ratio = 4.0 * W * std::pow(a, 1.0 - pd);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return 16.0 * std::pow(6.0 * static_cast<double>(q), 1.0 / pd) * a / (1.0 - ratio);
}

bool AtomicDecomposition::certified() const {
    if (!reconstruction_exact || !atoms_valid || !sup_bounds_hold) return false;
    for (const auto& c : certificates)
        if (!c.all()) return false;
    return true;
}

namespace {

struct DecomposeContext {
    const TreeTruncation& tree;
    const WeightedMeasure& mu;
    unsigned long p;
    Rational alpha;
    Rational sigma_pow;   // sigma^p
    Rational W;           // 2^(p-1) 6q (1+4^p)
    Rational sixq_lower;  // rational <= (6q)^(1/p), keeps certificates conservative
    Rational norm_b_pow;  // ||b||_p^p = sigma^p ||f||_p^p
};

StageCertificate stage_certificate(const DecomposeContext& ctx, long n,
                                   const std::vector<PendingPiece>& pieces,
                                   const TreeFunction& input) {
    StageCertificate cert;
    cert.stage = n;
    cert.piece_count = pieces.size();
    cert.supports_ok = true;
    cert.means_ok = true;
    cert.iv_holds = true;
    cert.max_normalized_lp_pow = 0;
    cert.sum_mu_supports = 0;

    Rational alpha_np = pow_int(ctx.alpha, static_cast<unsigned long>(n) * ctx.p);
    cert.bound_iii_pow = ctx.W * alpha_np;
    // (iv) right side, p-th power of 4 (6q)^(1/p) n alpha^n.
    Rational iv_rhs_pow = pow_int(Rational(4 * n) * ctx.sixq_lower, ctx.p) * alpha_np;

    Rational sum_piece_l1(0);
    for (const auto& piece : pieces) {
        std::vector<char> inside(ctx.tree.vertex_count(), 0);
        for_each_vertex(ctx.tree, piece.support, [&](Vertex v) { inside[v.idx] = 1; });
        Rational mean(0);
        for (std::uint32_t i = 0; i < ctx.tree.vertex_count(); ++i) {
            const Rational& val = piece.values.at_index(i);
            if (val == 0) continue;
            if (!inside[i]) cert.supports_ok = false;
            Vertex v{i};
            mean += val * ctx.mu(v);
            Rational gap = abs_r(val) - abs_r(input[v]);
            if (gap > 0 && ctx.sigma_pow * pow_int(gap, ctx.p) > iv_rhs_pow)
                cert.iv_holds = false;
        }
        if (mean != 0) cert.means_ok = false;

        Rational muS = mu_czset(ctx.mu, piece.support);
        cert.sum_mu_supports += muS;
        Rational normalized = ctx.sigma_pow * lp_norm_pow(piece.values, ctx.mu, ctx.p) / muS;
        if (normalized > cert.max_normalized_lp_pow) cert.max_normalized_lp_pow = normalized;
        sum_piece_l1 += l1_norm(piece.values, ctx.mu);
    }
    cert.iii_holds = cert.max_normalized_lp_pow <= cert.bound_iii_pow;

    if (n == 0) {
        cert.bound_v = cert.sum_mu_supports;
        cert.v_holds = true;
    } else {
        cert.bound_v = pow_int(Rational(4), static_cast<unsigned long>(n) + 1) *
                       pow_int(ctx.W, static_cast<unsigned long>(n)) / alpha_np *
                       ctx.norm_b_pow;
        cert.v_holds = cert.sum_mu_supports <= cert.bound_v;
    }

    // || sum of pieces ||_1 <= (W alpha^(np))^(1/p) * (v envelope), through
    // p-th powers; in b-coordinates both sides carry sigma.
    Rational lhs_pow = ctx.sigma_pow * pow_int(sum_piece_l1, ctx.p);
    Rational rhs_pow = ctx.W * alpha_np * pow_int(cert.bound_v, ctx.p);
    cert.residual_bound_holds = lhs_pow <= rhs_pow;
    return cert;
}

AtomicDecomposition decompose_core(const TreeFunction& f, const CZSet& support,
                                   const WeightedMeasure& mu, unsigned long p,
                                   const Rational& alpha, long max_stages,
                                   const Rational& sigma_pow) {
    const TreeTruncation& tree = f.tree();
    if (p < 2) throw std::invalid_argument("decomposition exponent must be an integer >= 2");
    if (!alpha_admissible(alpha, tree.q(), p))
        throw std::invalid_argument("alpha below the convergence threshold");
    if (integral(f, mu) != 0) throw std::domain_error("input must have zero mean");

    DecomposeContext ctx{tree,
                         mu,
                         p,
                         alpha,
                         sigma_pow,
                         rational_pow(2, static_cast<long>(p) - 1) * Rational(6 * tree.q()) *
                             (Rational(1) + rational_pow(4, static_cast<long>(p))),
                         rational_lower_root(Rational(6 * tree.q()), p),
                         sigma_pow * lp_norm_pow(f, mu, p)};

    AtomicDecomposition out(tree);
    out.p = p;
    out.alpha = alpha;
    out.sigma_pow = sigma_pow;
    out.sup_bounds_hold = true;

    out.pending.push_back(PendingPiece{support, f});
    out.certificates.push_back(stage_certificate(ctx, 0, out.pending, f));

    for (long stage = 0; stage < max_stages && !out.pending.empty(); ++stage) {
        // Covering level alpha^(stage+1) for b = sigma f, pulled back to f.
        Rational tau = pow_int(alpha, static_cast<unsigned long>(stage + 1) * p) / sigma_pow;
        std::vector<PendingPiece> next;
        for (const auto& piece : out.pending) {
            CoveringResult cov =
                cz_covering_density(abs_pow(piece.values, p), mu, tau, &piece.support);
            Rational muS = mu_czset(mu, piece.support);

            if (cov.mu_level_set == 0) {
                if (piece.values.is_zero()) continue;
                if (pow_int(linf_norm(piece.values), p) > tau) out.sup_bounds_hold = false;
                Rational B = rational_upper_root(tau, p);
                Rational coef = B * muS;
                out.terms.push_back(AtomTerm{
                    Atom{piece.support, (Rational(1) / coef) * piece.values,
                         std::numeric_limits<double>::infinity()},
                    coef, stage, true});
                continue;
            }

            std::vector<char> painted(tree.vertex_count(), 0);
            TreeFunction good = piece.values;
            for (std::size_t i = 0; i < cov.selected.size(); ++i) {
                TreeFunction fi(tree);
                Rational hint(0);
                bool nonzero = false;
                for_each_vertex(tree, cov.envelopes[i], [&](Vertex v) {
                    if (painted[v.idx]) return;
                    painted[v.idx] = 1;
                    if (piece.values[v] == 0) return;
                    fi[v] = piece.values[v];
                    hint += fi[v] * mu(v);
                    nonzero = true;
                });
                Rational mean = hint / mu_trapezoid(mu, cov.selected[i]);
                if (mean != 0) {
                    nonzero = true;
                    for_each_vertex(tree, cov.selected[i], [&](Vertex v) { fi[v] -= mean; });
                }
                if (!nonzero) continue;
                good -= fi;
                next.push_back(PendingPiece{cov.envelopes[i], fi});
            }

            if (good.is_zero()) continue;
            Rational good_bound_pow = pow_int(Rational(4), p) * Rational(6 * tree.q()) * tau;
            if (pow_int(linf_norm(good), p) > good_bound_pow) out.sup_bounds_hold = false;
            Rational B = rational_upper_root(good_bound_pow, p);
            Rational coef = B * muS;
            out.terms.push_back(AtomTerm{
                Atom{piece.support, (Rational(1) / coef) * good,
                     std::numeric_limits<double>::infinity()},
                coef, stage, false});
        }
        out.pending = std::move(next);
        out.stages_run = stage + 1;
        out.certificates.push_back(
            stage_certificate(ctx, out.stages_run, out.pending, f));
    }

    for (const auto& piece : out.pending) out.residual += piece.values;

    out.coefficient_sum = 0;
    TreeFunction rebuilt = out.residual;
    out.atoms_valid = true;
    for (const auto& term : out.terms) {
        out.coefficient_sum += term.coefficient;
        rebuilt += term.coefficient * term.atom.values;
        if (!validate_atom(term.atom, mu).valid()) out.atoms_valid = false;
    }
    out.reconstruction_exact = true;
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        if (rebuilt.at_index(i) != f.at_index(i)) {
            out.reconstruction_exact = false;
            break;
        }
    }
    out.residual_l1 = l1_norm(out.residual, mu);
    return out;
}

}  // namespace

AtomicDecomposition atomic_decompose(const Atom& a, const WeightedMeasure& mu, unsigned long p,
                                     const Rational& alpha, long max_stages) {
    Rational muS = mu_czset(mu, a.support);
    // b = mu(S) a, so sigma = mu(S) exactly.
    return decompose_core(a.values, a.support, mu, p, alpha, max_stages, pow_int(muS, p));
}

AtomicDecomposition atomic_decompose_function(const TreeFunction& f, const CZSet& support,
                                              const WeightedMeasure& mu, unsigned long p,
                                              const Rational& alpha, long max_stages) {
    Rational fp = lp_norm_pow(f, mu, p);
    if (fp == 0) {
        AtomicDecomposition out(f.tree());
        out.p = p;
        out.alpha = alpha;
        out.sigma_pow = 1;
        out.reconstruction_exact = true;
        out.atoms_valid = true;
        out.sup_bounds_hold = true;
        return out;
    }
    // Normalize to a (1,p)-atom: sigma^p = mu(S) / ||f||_p^p.
    return decompose_core(f, support, mu, p, alpha, max_stages, mu_czset(mu, support) / fp);
}

H1Bound h1_norm_upper_bound(const TreeFunction& f, const CZSet& support,
                            const WeightedMeasure& mu, unsigned long p, const Rational& alpha,
                            long max_stages) {
    if (integral(f, mu) != 0) throw std::domain_error("H1 bound needs a mean-zero input");
    H1Bound out;
    out.direct_route = linf_norm(f) * mu_czset(mu, support);
    // f / (||f||_p mu(S)^(1 - 1/p)) is a (1,p)-atom; for a tall spike in a wide
    // set this beats the sup normalization by up to (mu(S) / mu(supp f))^(1/p).
    if (p > 1) {
        Rational m = mu_czset(mu, support);
        Rational direct_p = rational_upper_root(lp_norm_pow(f, mu, p) * pow_int(m, p - 1), p);
        if (direct_p < out.direct_route) out.direct_route = direct_p;
    }
    out.bound = out.direct_route;
    out.decomposition_route = out.direct_route;
    out.series_bound = std::numeric_limits<double>::infinity();
    if (out.direct_route == 0 || max_stages <= 0) return out;

    AtomicDecomposition d = atomic_decompose_function(f, support, mu, p, alpha, max_stages);
    Rational route = d.coefficient_sum;
    for (const auto& piece : d.pending)
        route += linf_norm(piece.values) * mu_czset(mu, piece.support);
    out.decomposition_route = route;
    if (route < out.bound) {
        out.bound = route;
        out.decomposition_used = true;
    }
    double sigma = std::pow(to_double(d.sigma_pow), 1.0 / static_cast<double>(p));
    out.series_bound = series_constant(f.tree().q(), p, alpha) *
                       to_double(d.sigma_pow * lp_norm_pow(f, mu, p)) / sigma;
    return out;
}

std::vector<PendingPiece> split_mean_zero(const TreeFunction& f, const WeightedMeasure& mu) {
    const TreeTruncation& tree = f.tree();
    if (f[tree.apex()] != 0)
        throw std::domain_error("no CZ set contains the apex; input must vanish there");
    if (integral(f, mu) != 0) throw std::domain_error("input must have zero mean");

    std::vector<PendingPiece> pieces;
    // Depth slices: (f - mean_d) on depth d is mean-zero inside a CZ set whose
    // band contains d.
    std::vector<Rational> slice_mean(tree.depth() + 1, Rational(0));
    for (long d = 1; d <= tree.depth(); ++d) {
        Rational sum(0);
        std::uint32_t first = tree.first_index_at_depth(d), n = tree.vertices_at_depth(d);
        for (std::uint32_t i = first; i < first + n; ++i) sum += f.at_index(i);
        Rational mu_slice = Rational(n) * mu.weight_at_depth(d);
        slice_mean[d] = sum * mu.weight_at_depth(d) / mu_slice;
        TreeFunction piece(tree);
        bool nonzero = false;
        for (std::uint32_t i = first; i < first + n; ++i) {
            piece.at_index(i) = f.at_index(i) - slice_mean[d];
            if (piece.at_index(i) != 0) nonzero = true;
        }
        if (nonzero)
            pieces.push_back(PendingPiece{
                make_czset(tree, tree.apex(), (d + 4) / 4, ClipPolicy::clip), piece});
    }

    // Leftover sum_d mean_d chi_d telescopes into two-slice dipoles.
    Rational running(0);
    for (long d = 1; d < tree.depth(); ++d) {
        Rational mu_d = Rational(tree.vertices_at_depth(d)) * mu.weight_at_depth(d);
        running += slice_mean[d] * mu_d;
        if (running == 0) continue;
        Rational mu_next =
            Rational(tree.vertices_at_depth(d + 1)) * mu.weight_at_depth(d + 1);
        TreeFunction dip(tree);
        std::uint32_t first = tree.first_index_at_depth(d);
        for (std::uint32_t i = first; i < first + tree.vertices_at_depth(d); ++i)
            dip.at_index(i) = running / mu_d;
        first = tree.first_index_at_depth(d + 1);
        for (std::uint32_t i = first; i < first + tree.vertices_at_depth(d + 1); ++i)
            dip.at_index(i) = -running / mu_next;
        pieces.push_back(PendingPiece{
            make_czset(tree, tree.apex(), (d + 5) / 4, ClipPolicy::clip), dip});
    }
    return pieces;
}

}  // namespace czhardy
