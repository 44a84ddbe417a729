#include "czhardy/interpolation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace czhardy {

namespace {

bool integral_exponent(double p) { return p > 1 && p == std::floor(p) && p < 64; }

Rational threshold_pow(const Rational& lambda, double p) {
    if (integral_exponent(p)) return pow_int(lambda, static_cast<unsigned long>(p));
    return rational_from_double(std::pow(to_double(lambda), p));
}

}  // namespace

KDecomposition k_decompose(const TreeFunction& f, const WeightedMeasure& mu, double p,
                           const Rational& lambda, const KOptions& opt) {
    if (lambda <= 0) throw std::invalid_argument("decomposition level must be positive");
    if (!(p > 1)) throw std::invalid_argument("exponent must exceed 1");
    const TreeTruncation& tree = f.tree();

    TreeFunction density = integral_exponent(p)
                               ? abs_pow(f, static_cast<unsigned long>(p))
                               : abs_pow_rationalized(f, p);
    CoveringResult cov = cz_covering_density(density, mu, threshold_pow(lambda, p), nullptr);

    KDecomposition out(tree);
    out.lambda = lambda;

    std::vector<char> painted(tree.vertex_count(), 0);
    TreeFunction bad(tree);
    for (std::size_t i = 0; i < cov.selected.size(); ++i) {
        TreeFunction fi(tree);
        Rational hint(0);
        bool nonzero = false;
        for_each_vertex(tree, cov.envelopes[i], [&](Vertex v) {
            if (painted[v.idx]) return;
            painted[v.idx] = 1;
            if (f[v] == 0) return;
            fi[v] = f[v];
            hint += fi[v] * mu(v);
            nonzero = true;
        });
        Rational mean = hint / mu_trapezoid(mu, cov.selected[i]);
        if (mean != 0) {
            nonzero = true;
            for_each_vertex(tree, cov.selected[i], [&](Vertex v) { fi[v] -= mean; });
        }
        if (!nonzero) continue;
        bad += fi;
        out.bad_terms.push_back(PendingPiece{cov.envelopes[i], fi});
    }
    out.good = f - bad;

    out.good_sup = linf_norm(out.good);
    out.good_ratio = to_double(out.good_sup / lambda);

    Rational alpha = opt.alpha;
    if (alpha <= 0) alpha = default_alpha(tree.q(), opt.h1_p);
    out.h1_bad_bound = 0;
    for (const auto& piece : out.bad_terms)
        out.h1_bad_bound +=
            h1_norm_upper_bound(piece.values, piece.support, mu, opt.h1_p, alpha, opt.h1_stages)
                .bound;

    out.reconstruction_exact = true;
    {
        TreeFunction rebuilt = out.good + bad;
        for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
            if (rebuilt.at_index(i) != f.at_index(i)) out.reconstruction_exact = false;
    }
    out.pieces_mean_zero = true;
    out.pieces_supported = true;
    for (const auto& piece : out.bad_terms) {
        if (integral(piece.values, mu) != 0) out.pieces_mean_zero = false;
        std::vector<char> inside(tree.vertex_count(), 0);
        for_each_vertex(tree, piece.support, [&](Vertex v) { inside[v.idx] = 1; });
        for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
            if (!inside[i] && piece.values.at_index(i) != 0) out.pieces_supported = false;
    }
    return out;
}

std::vector<Rational> default_lambda_grid(const TreeFunction& f, const WeightedMeasure& mu,
                                          double p, int per_decade) {
    double lo = lp_norm(f, mu, p) / to_double(mu.total());
    double hi = 2.0 * to_double(linf_norm(f));
    std::vector<Rational> grid;
    if (!(lo > 0) || !(hi > 0)) return grid;
    if (lo > hi) std::swap(lo, hi);
    double step = std::pow(10.0, 1.0 / per_decade);
    for (double v = lo; v < hi * step; v *= step)
        grid.push_back(rational_from_double(std::min(v, hi)));
    return grid;
}

std::vector<KProfilePoint> k_profile(const TreeFunction& f, const WeightedMeasure& mu, double p,
                                     double p1, const std::vector<Rational>& grid,
                                     const KOptions& opt) {
    std::vector<KProfilePoint> profile;
    profile.reserve(grid.size());
    for (const Rational& lambda : grid) {
        KDecomposition kd = k_decompose(f, mu, p, lambda, opt);
        KProfilePoint pt;
        pt.lambda = to_double(lambda);
        pt.h1_bad = to_double(kd.h1_bad_bound);
        pt.good_p1 = lp_norm(kd.good, mu, p1);
        profile.push_back(pt);
    }
    return profile;
}

double k_functional_upper(const std::vector<KProfilePoint>& profile, double t) {
    if (profile.empty()) throw std::invalid_argument("empty lambda grid");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : profile) best = std::min(best, pt.h1_bad + t * pt.good_p1);
    return best;
}

InterpolationReport interpolation_exponent_report(const TreeFunction& f,
                                                  const WeightedMeasure& mu, double p, double p1,
                                                  int lo_exp, int hi_exp, const KOptions& opt) {
    InterpolationReport rep;
    rep.p = p;
    rep.p1 = p1;
    rep.theta = (1.0 - 1.0 / p) / (1.0 - (std::isinf(p1) ? 0.0 : 1.0 / p1));

    if (f.is_zero()) {
        for (int e = lo_exp; e <= hi_exp; ++e) {
            rep.t.push_back(std::ldexp(1.0, e));
            rep.k_bound.push_back(0.0);
        }
        rep.nondecreasing = rep.concave = true;
        return rep;
    }

    std::vector<KProfilePoint> profile =
        k_profile(f, mu, p, p1, default_lambda_grid(f, mu, p), opt);

    double norm_p = lp_norm(f, mu, p);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int e = lo_exp; e <= hi_exp; ++e) {
        double t = std::ldexp(1.0, e);
        double k = k_functional_upper(profile, t);
        rep.t.push_back(t);
        rep.k_bound.push_back(k);
        rep.sup_ratio = std::max(rep.sup_ratio, std::pow(t, -rep.theta) * k / norm_p);
        double x = std::log2(t), y = std::log2(k);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(rep.t.size());
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    rep.nondecreasing = true;
    for (std::size_t i = 1; i < rep.k_bound.size(); ++i)
        if (rep.k_bound[i] < rep.k_bound[i - 1] * (1.0 - 1e-12)) rep.nondecreasing = false;
    rep.concave = true;
    for (std::size_t i = 2; i < rep.k_bound.size(); ++i) {
        double t0 = rep.t[i - 2], t1 = rep.t[i - 1], t2 = rep.t[i];
        double chord =
            rep.k_bound[i - 2] + (rep.k_bound[i] - rep.k_bound[i - 2]) * (t1 - t0) / (t2 - t0);
        if (rep.k_bound[i - 1] < chord * (1.0 - 1e-9)) rep.concave = false;
    }
    return rep;
}

}  // namespace czhardy
