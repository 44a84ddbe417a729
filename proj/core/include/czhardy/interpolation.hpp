#pragma once

#include <vector>

#include "czhardy/hardy.hpp"

namespace czhardy {

// f = good + sum of bad pieces at level lambda: the bad pieces are the
// mean-zero localizations of f over the covering at threshold lambda^p, the
// good part is what remains.
struct KDecomposition {
    Rational lambda;
    TreeFunction good;
    std::vector<PendingPiece> bad_terms;

    Rational good_sup;       // ||good||_inf, exact
    Rational h1_bad_bound;   // sum of certified per-piece atomic-norm bounds
    double good_ratio = 0.0; // ||good||_inf / lambda, the empirical constant

    bool reconstruction_exact = false;
    bool pieces_mean_zero = false;
    bool pieces_supported = false;

    explicit KDecomposition(const TreeTruncation& tree) : good(tree) {}
};

struct KOptions {
    long h1_stages = 1;       // decomposition-route depth for piece bounds (0 = sup route)
    unsigned long h1_p = 2;   // exponent driving the piece decompositions
    Rational alpha;           // <= 0 picks default_alpha(q, h1_p)
};

// p > 1; integer p runs exactly, fractional p through dyadic rationalization
// of |f|^p and lambda^p.
KDecomposition k_decompose(const TreeFunction& f, const WeightedMeasure& mu, double p,
                           const Rational& lambda, const KOptions& opt = {});

// One decomposition per grid point, reduced to the two numbers entering the
// K-functional: the bad-part atomic bound and ||good||_{p1}.
struct KProfilePoint {
    double lambda = 0;
    double h1_bad = 0;
    double good_p1 = 0;
};

std::vector<Rational> default_lambda_grid(const TreeFunction& f, const WeightedMeasure& mu,
                                          double p, int per_decade = 32);

std::vector<KProfilePoint> k_profile(const TreeFunction& f, const WeightedMeasure& mu, double p,
                                     double p1, const std::vector<Rational>& grid,
                                     const KOptions& opt = {});

// min over the profile of  h1_bad + t * good_p1 : an upper bound for
// K(t, f; H1, L^p1).
double k_functional_upper(const std::vector<KProfilePoint>& profile, double t);

struct InterpolationReport {
    double p = 0, p1 = 0, theta = 0;
    std::vector<double> t;
    std::vector<double> k_bound;
    double slope = 0;      // log-log least squares over the t window
    double sup_ratio = 0;  // sup_t t^-theta K(t) / ||f||_p
    bool nondecreasing = false;
    bool concave = false;  // chord test on consecutive triples
};

// K-bound sweep over dyadic t in [2^lo_exp, 2^hi_exp] with the measured
// exponent; theta = (1 - 1/p) / (1 - 1/p1).
InterpolationReport interpolation_exponent_report(const TreeFunction& f,
                                                  const WeightedMeasure& mu, double p, double p1,
                                                  int lo_exp = -6, int hi_exp = 6,
                                                  const KOptions& opt = {});

}  // namespace czhardy
