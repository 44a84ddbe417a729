#include "czhardy/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "czhardy/errors.hpp"

namespace czhardy {

WeightedMeasure::WeightedMeasure(const TreeTruncation& tree) : tree_(&tree) {
    weight_by_depth_.reserve(tree.depth() + 1);
    total_ = 0;
    for (long d = 0; d <= tree.depth(); ++d) {
        weight_by_depth_.push_back(rational_pow(tree.q(), tree.apex_level() - d));
        total_ += Rational(tree.vertices_at_depth(d)) * weight_by_depth_.back();
    }
}

bool WeightedMeasure::sphere_contained(Vertex x0, long r) const {
    long d = tree_->depth_of(x0);
    return r <= d && r <= tree_->depth() - d;
}

Rational WeightedMeasure::mu_sphere(Vertex x0, long r) const {
    if (r < 0) throw std::invalid_argument("mu_sphere: negative radius");
    if (!sphere_contained(x0, r))
        throw containment_error("mu_sphere: sphere exits the truncation");
    if (r == 0) return (*this)(x0);
    return rational_pow(tree_->q(), tree_->level(x0) + r - 1) * Rational(1 + tree_->q());
}

Rational WeightedMeasure::mu_ball(Vertex x0, long r) const {
    if (r < 0) throw std::invalid_argument("mu_ball: negative radius");
    if (!sphere_contained(x0, r))
        throw containment_error("mu_ball: ball exits the truncation");
    long q = tree_->q();
    Rational band = rational_pow(q, r + 1) + rational_pow(q, r) - 2;
    return rational_pow(q, tree_->level(x0)) * band / Rational(q - 1);
}

Rational WeightedMeasure::doubling_ratio(Vertex x0, long r) const {
    if (r < 1) throw std::invalid_argument("doubling_ratio: radius must be >= 1");
    return mu_ball(x0, 2 * r) / mu_ball(x0, r);
}

Rational WeightedMeasure::local_doubling_constant(long R) const {
    if (R < 1) throw std::invalid_argument("local_doubling_constant: R must be >= 1");
    long q = tree_->q();
    Rational num = rational_pow(q, 2 * R + 1) + rational_pow(q, 2 * R) - 2;
    Rational den = rational_pow(q, R + 1) + rational_pow(q, R) - 2;
    return num / den;
}

TreeFunction TreeFunction::constant(const TreeTruncation& tree, const Rational& c) {
    TreeFunction f(tree);
    for (auto& v : f.values_) v = c;
    return f;
}

TreeFunction& TreeFunction::operator+=(const TreeFunction& other) {
    if (tree_ != other.tree_) throw std::invalid_argument("TreeFunction: tree mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

TreeFunction& TreeFunction::operator-=(const TreeFunction& other) {
    if (tree_ != other.tree_) throw std::invalid_argument("TreeFunction: tree mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

TreeFunction& TreeFunction::operator*=(const Rational& c) {
    for (auto& v : values_) v *= c;
    return *this;
}

bool TreeFunction::is_zero() const {
    for (const auto& v : values_)
        if (v != 0) return false;
    return true;
}

Rational integral(const TreeFunction& f, const WeightedMeasure& mu) {
    const TreeTruncation& tree = f.tree();
    Rational out(0);
    for (long d = 0; d <= tree.depth(); ++d) {
        Rational level_sum(0);
        std::uint32_t first = tree.first_index_at_depth(d);
        std::uint32_t last = first + tree.vertices_at_depth(d);
        for (std::uint32_t i = first; i < last; ++i) level_sum += f.at_index(i);
        out += level_sum * mu.weight_at_depth(d);
    }
    return out;
}

TreeFunction abs_pow(const TreeFunction& f, unsigned long p) {
    if (p < 1) throw std::invalid_argument("abs_pow: exponent must be >= 1");
    TreeFunction g(f.tree());
    for (std::uint32_t i = 0; i < f.size(); ++i)
        g.at_index(i) = pow_int(abs(f.at_index(i)), p);
    return g;
}

TreeFunction abs_pow_rationalized(const TreeFunction& f, double p) {
    if (p < 1) throw std::invalid_argument("abs_pow_rationalized: exponent must be >= 1");
    TreeFunction g(f.tree());
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        double v = std::abs(to_double(f.at_index(i)));
        g.at_index(i) = v == 0 ? Rational(0) : rational_from_double(std::pow(v, p));
    }
    return g;
}

Rational l1_norm(const TreeFunction& f, const WeightedMeasure& mu) {
    return lp_norm_pow(f, mu, 1);
}

Rational linf_norm(const TreeFunction& f) {
    Rational m(0);
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        Rational a = abs(f.at_index(i));
        if (a > m) m = a;
    }
    return m;
}

Rational lp_norm_pow(const TreeFunction& f, const WeightedMeasure& mu, unsigned long p) {
    if (p < 1) throw std::invalid_argument("lp_norm_pow: p must be >= 1");
    const TreeTruncation& tree = f.tree();
    Rational out(0);
    for (long d = 0; d <= tree.depth(); ++d) {
        Rational level_sum(0);
        std::uint32_t first = tree.first_index_at_depth(d);
        std::uint32_t last = first + tree.vertices_at_depth(d);
        for (std::uint32_t i = first; i < last; ++i)
            level_sum += pow_int(abs(f.at_index(i)), p);
        out += level_sum * mu.weight_at_depth(d);
    }
    return out;
}

double lp_norm(const TreeFunction& f, const WeightedMeasure& mu, double p) {
    if (p < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) return to_double(linf_norm(f));
    if (p == std::floor(p) && p < 64) {
        Rational pw = lp_norm_pow(f, mu, static_cast<unsigned long>(p));
        return std::pow(to_double(pw), 1.0 / p);
    }
    double acc = 0;
    const TreeTruncation& tree = f.tree();
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        double v = std::abs(to_double(f.at_index(i)));
        if (v != 0)
            acc += std::pow(v, p) * to_double(mu.weight_at_depth(tree.depth_of(Vertex{i})));
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace czhardy
