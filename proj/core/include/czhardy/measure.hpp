#pragma once

#include <vector>

#include "czhardy/rational.hpp"
#include "czhardy/tree.hpp"

namespace czhardy {

// The weighted measure mu({x}) = q^level(x).  With the default normalization
// (apex_level = depth) every weight is a positive integer; other apex levels
// give exact rational weights.
class WeightedMeasure {
  public:
    explicit WeightedMeasure(const TreeTruncation& tree);

    const TreeTruncation& tree() const { return *tree_; }
    const Rational& operator()(Vertex v) const { return weight_by_depth_[tree_->depth_of(v)]; }
    const Rational& weight_at_depth(long d) const { return weight_by_depth_[d]; }
    const Rational& total() const { return total_; }

    // True iff the sphere/ball of radius r about x0, taken in the infinite
    // tree, lies inside the truncation.
    bool sphere_contained(Vertex x0, long r) const;

    // mu(S_r(x0)) = q^(level+r-1) (1+q) for r >= 1.
    // S_0(x0) would have measure mu({x0}) = q^level; the closed form above
    // does not extend to r = 0, and we return q^level by convention.
    Rational mu_sphere(Vertex x0, long r) const;

    // mu(B_r(x0)) = q^level (q^(r+1) + q^r - 2) / (q - 1), valid for r >= 0.
    Rational mu_ball(Vertex x0, long r) const;

    // mu(B_2r(x0)) / mu(B_r(x0)); requires B_2r fully contained.
    Rational doubling_ratio(Vertex x0, long r) const;

    // C_R = (q^(2R+1) + q^2R - 2) / (q^(R+1) + q^R - 2), the best constant
    // with mu(B_2r) <= C_R mu(B_r) over radii r <= R.  Depends only on q.
    Rational local_doubling_constant(long R) const;

  private:
    const TreeTruncation* tree_;
    std::vector<Rational> weight_by_depth_;
    Rational total_;
};

// Dense exact-rational function on the truncation.
class TreeFunction {
  public:
    explicit TreeFunction(const TreeTruncation& tree)
        : tree_(&tree), values_(tree.vertex_count(), Rational(0)) {}

    static TreeFunction constant(const TreeTruncation& tree, const Rational& c);

    const TreeTruncation& tree() const { return *tree_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(values_.size()); }

    Rational& operator[](Vertex v) { return values_[v.idx]; }
    const Rational& operator[](Vertex v) const { return values_[v.idx]; }
    Rational& at_index(std::uint32_t i) { return values_[i]; }
    const Rational& at_index(std::uint32_t i) const { return values_[i]; }

    TreeFunction& operator+=(const TreeFunction& other);
    TreeFunction& operator-=(const TreeFunction& other);
    TreeFunction& operator*=(const Rational& c);
    friend TreeFunction operator+(TreeFunction a, const TreeFunction& b) { return a += b; }
    friend TreeFunction operator-(TreeFunction a, const TreeFunction& b) { return a -= b; }
    friend TreeFunction operator*(const Rational& c, TreeFunction f) { return f *= c; }

    bool is_zero() const;

  private:
    const TreeTruncation* tree_;
    std::vector<Rational> values_;
};

// integral of f over the whole truncation
Rational integral(const TreeFunction& f, const WeightedMeasure& mu);

// Pointwise |f|^p for integer p >= 1, exact.
TreeFunction abs_pow(const TreeFunction& f, unsigned long p);

// Pointwise |f(x)|^p evaluated in double precision and stored exactly as the
// dyadic rational the evaluation produced.  This is how non-integer
// exponents enter the exact covering machinery: every certificate downstream
// is an exact statement about this rationalized power function.
TreeFunction abs_pow_rationalized(const TreeFunction& f, double p);

Rational l1_norm(const TreeFunction& f, const WeightedMeasure& mu);
Rational linf_norm(const TreeFunction& f);
// ||f||_p^p as an exact rational, integer p >= 1.
Rational lp_norm_pow(const TreeFunction& f, const WeightedMeasure& mu, unsigned long p);
// ||f||_p in double precision; p may be any real >= 1 or infinity.
double lp_norm(const TreeFunction& f, const WeightedMeasure& mu, double p);

}  // namespace czhardy
