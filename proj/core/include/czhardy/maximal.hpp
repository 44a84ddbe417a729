#pragma once

#include <cstddef>
#include <vector>

#include "czhardy/cz_sets.hpp"
#include "czhardy/measure.hpp"

namespace czhardy {

// Band integrals below every vertex: after construction, the integral of the
// density over any trapezoid band is two lookups.  Row v holds prefix sums of
// level integrals over the descendants of v.
class BandIntegrals {
  public:
    BandIntegrals(const TreeFunction& density, const WeightedMeasure& mu);

    // Integral of the density over { x below v : lo <= depth gap <= hi }.
    Rational band(Vertex v, long lo, long hi) const;
    Rational over(const AdmissibleTrapezoid& R) const;
    const Rational& total() const { return total_; }

  private:
    const TreeTruncation* tree_;
    std::vector<std::vector<Rational>> prefix_;
    Rational total_;
};

// Uncentered maximal operator over admissible trapezoids:
//   Mf(x) = max over trapezoids R containing x of mu(R)^-1 int_R |f| dmu,
// degenerate singletons included, so Mf >= |f| pointwise.  Exact.
TreeFunction maximal_function(const TreeFunction& f, const WeightedMeasure& mu);

// Restricted variant: only trapezoids contained in Q count, and the result
// vanishes outside Q.
TreeFunction maximal_function_restricted(const TreeFunction& f, const WeightedMeasure& mu,
                                         const CZSet& Q);

// Same operators applied to a nonnegative density directly (the covering
// machinery feeds |f|^p through here).
TreeFunction maximal_of_density(const TreeFunction& density, const WeightedMeasure& mu);
TreeFunction maximal_of_density_restricted(const TreeFunction& density,
                                           const WeightedMeasure& mu, const CZSet& Q);

// Greedy Calderon-Zygmund covering at threshold T = lambda^p applied to the
// density g = |f|^p.  Candidates are the admissible trapezoids R with
// int_R g >= T mu(R); selection scans them by decreasing width (canonical
// order breaks ties) keeping each candidate disjoint from those already
// selected.  All reported quantities and certificate flags are exact.
struct CoveringResult {
    Rational threshold_pow;  // T = lambda^p
    std::vector<AdmissibleTrapezoid> selected;
    std::vector<CZSet> envelopes;

    std::vector<char> level_set;  // indicator of { M g > T } by vertex index
    Rational mu_level_set;
    Rational mu_union_envelopes;
    Rational sum_mu_selected;
    Rational sum_mu_envelopes;
    Rational total_density;  // int g dmu = ||f||_p^p
    std::size_t candidate_count = 0;

    bool disjoint = false;             // selected sets pairwise disjoint
    bool level_set_covered = false;    // level set inside the union of envelopes
    bool candidates_dominated = false; // every candidate meets a selected set of >= width
    bool mass_bound = false;           // T * sum mu(R_i) <= int g
    bool envelope_bound = false;       // sum mu(env_i) <= 4 sum mu(R_i)

    bool all_certificates() const {
        return disjoint && level_set_covered && candidates_dominated && mass_bound &&
               envelope_bound;
    }
};

// p is the integer exponent applied to |f|; lambda > 0.
CoveringResult cz_covering(const TreeFunction& f, const WeightedMeasure& mu, unsigned long p,
                           const Rational& lambda);
CoveringResult cz_covering_restricted(const TreeFunction& f, const WeightedMeasure& mu,
                                      unsigned long p, const Rational& lambda, const CZSet& Q);

// Primitive: covering of a nonnegative density at threshold T = lambda^p.
// Q restricts candidates and the maximal operator when non-null.
CoveringResult cz_covering_density(const TreeFunction& density, const WeightedMeasure& mu,
                                   const Rational& threshold_pow, const CZSet* Q = nullptr);

}  // namespace czhardy
