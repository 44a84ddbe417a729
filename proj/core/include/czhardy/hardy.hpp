#pragma once

#include <limits>
#include <vector>

#include "czhardy/maximal.hpp"

namespace czhardy {

// (1,p)-atom: mean zero, supported in a CZ set, with ||a||_p <= mu(S)^(1/p-1).
// p = infinity is the default species; every atom the decomposition emits is a
// (1,inf)-atom with exactly rational values.
struct Atom {
    CZSet support;
    TreeFunction values;
    double p = std::numeric_limits<double>::infinity();
};

struct AtomCheck {
    bool supported = false;
    bool mean_zero = false;
    bool size_ok = false;
    Rational mean_integral;
    double size_ratio = 0.0;  // ||a||_p * mu(S)^(1-1/p), <= 1 when valid

    bool valid() const { return supported && mean_zero && size_ok; }
};

// Support and cancellation are exact; the size condition is exact for p = inf
// and for integer p (checked through p-th powers), float-tolerance otherwise.
AtomCheck validate_atom(const Atom& a, const WeightedMeasure& mu);

// Precondition for geometric convergence of the recursive decomposition:
//   alpha^(p-1) > 2^(p-1) * 24 q (1 + 4^p).
bool alpha_admissible(const Rational& alpha, long q, unsigned long p);
// Twice the critical value, exact for p = 2, a certified rational upper
// rounding of 4 * [24 q (1+4^p)]^(1/(p-1)) otherwise.
Rational default_alpha(long q, unsigned long p);

struct AtomTerm {
    Atom atom;
    Rational coefficient;  // lambda_j, exact
    long stage = 0;
    bool whole_piece = false;  // piece emitted intact (its covering had empty level set)
};

struct PendingPiece {
    CZSet support;
    TreeFunction values;
};

// Exact per-stage certificates, stated for the normalized input b = sigma f.
// Stage n certifies the pieces pending after n rounds of covering.
struct StageCertificate {
    long stage = 0;
    std::size_t piece_count = 0;

    // (i)/(ii): support containment and mean zero of every pending piece.
    bool supports_ok = false;
    bool means_ok = false;
    // (iii): mu(S_j)^-1 int |b_j|^p <= 2^(p-1) 6q (1+4^p) alpha^(np), per piece.
    Rational max_normalized_lp_pow;
    Rational bound_iii_pow;
    bool iii_holds = false;
    // (iv): |b_j| <= |b| + 4 (6q)^(1/p) n alpha^n pointwise, certified against
    // a rational lower rounding of the irrational factor.
    bool iv_holds = false;
    // (v): sum_j mu(S_j) <= 4^(n+1) [2^(p-1) 6q (1+4^p)]^n alpha^(-np) ||b||_p^p,
    // certified for n >= 1 (at n = 0 the left side is mu of the input support).
    Rational sum_mu_supports;
    Rational bound_v;
    bool v_holds = false;
    // Residual chain: ||sum_j b_j||_1 <= (iii bound)^(1/p') style geometric
    // envelope, compared exactly through p-th powers.
    bool residual_bound_holds = false;

    bool all() const {
        return supports_ok && means_ok && iii_holds && iv_holds && v_holds &&
               residual_bound_holds;
    }
};

struct AtomicDecomposition {
    unsigned long p = 2;
    Rational alpha;
    long stages_run = 0;
    Rational sigma_pow;  // sigma^p with b = sigma f the normalized input

    std::vector<AtomTerm> terms;
    std::vector<PendingPiece> pending;
    TreeFunction residual;  // sum of pending pieces

    std::vector<StageCertificate> certificates;
    Rational coefficient_sum;  // sum |lambda_j| in input coordinates, exact
    Rational residual_l1;      // ||residual||_1 in input coordinates, exact

    bool reconstruction_exact = false;
    bool atoms_valid = false;     // every term passes validate_atom at p=inf
    bool sup_bounds_hold = false; // every emitted good part met its sup bound

    bool certified() const;

    explicit AtomicDecomposition(const TreeTruncation& tree) : residual(tree) {}
};

// Geometric series constant C_p from the coefficient chain,
//   C_p = sum_l 4 (6q)^(1/p) alpha^(l+1) 4^(l+1) [2^(p-1) 6q (1+4^p)]^l alpha^(-lp),
// finite exactly when alpha is admissible.
double series_constant(long q, unsigned long p, const Rational& alpha);

// Recursive decomposition of an atom with exponent p in (1, inf): emits exact
// (1,inf)-atoms stage by stage and certifies the proof properties.  Stage l
// covers every pending piece at level alpha^(l+1).
AtomicDecomposition atomic_decompose(const Atom& a, const WeightedMeasure& mu, unsigned long p,
                                     const Rational& alpha, long max_stages);

// Same machinery on a raw mean-zero function supported in `support`; the
// normalization b = sigma f with sigma^p = mu(S) / ||f||_p^p stays rational.
AtomicDecomposition atomic_decompose_function(const TreeFunction& f, const CZSet& support,
                                              const WeightedMeasure& mu, unsigned long p,
                                              const Rational& alpha, long max_stages);

struct H1Bound {
    Rational bound;                // min of the two routes, exact
    Rational direct_route;         // ||f||_inf * mu(S)
    Rational decomposition_route;  // sum |lambda_j| + certified pending tail
    double series_bound;           // C_p * sigma^p ||f||_p^p (a priori envelope)
    bool decomposition_used = false;
};

// Certified upper bound for the atomic-norm of a mean-zero function supported
// in a CZ set.  max_stages = 0 skips the decomposition route.
H1Bound h1_norm_upper_bound(const TreeFunction& f, const CZSet& support,
                            const WeightedMeasure& mu, unsigned long p, const Rational& alpha,
                            long max_stages);

// Splits a mean-zero function vanishing at the apex into finitely many
// mean-zero pieces each supported in a CZ set rooted at the apex (plumbing for
// inputs that are not CZ-localized; the apex itself lies in no CZ set).
std::vector<PendingPiece> split_mean_zero(const TreeFunction& f, const WeightedMeasure& mu);

}  // namespace czhardy
