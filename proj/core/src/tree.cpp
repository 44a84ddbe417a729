#include "czhardy/tree.hpp"

#include <limits>
#include <stdexcept>

namespace czhardy {

void TreeConfig::validate() const {
    if (q < 2) throw std::invalid_argument("TreeConfig: q must be at least 2");
    if (q > 10) throw std::invalid_argument("TreeConfig: word addressing supports q <= 10");
    if (depth < 1) throw std::invalid_argument("TreeConfig: depth must be at least 1");
    if (depth > 30) throw std::invalid_argument("TreeConfig: depth too large");
    // (q^(depth+1) - 1)/(q - 1) must stay well inside 32-bit indexing.
    long double count = 0;
    long double pw = 1;
    for (long d = 0; d <= depth; ++d) {
        count += pw;
        pw *= static_cast<long double>(q);
        if (count > 1e9L) throw std::invalid_argument("TreeConfig: truncation too large");
    }
}

TreeTruncation::TreeTruncation(TreeConfig config) {
    config.validate();
    q_ = config.q;
    depth_ = config.depth;
    apex_level_ = config.apex_level.value_or(depth_);

    offsets_.resize(depth_ + 2);
    std::uint64_t first = 0;
    std::uint64_t width = 1;
    for (long d = 0; d <= depth_ + 1; ++d) {
        offsets_[d] = static_cast<std::uint32_t>(first);
        first += width;
        width *= q_;
        if (first > std::numeric_limits<std::uint32_t>::max())
            throw std::invalid_argument("TreeConfig: truncation too large");
    }
    count_ = offsets_[depth_ + 1];

    depths_.resize(count_);
    for (long d = 0; d <= depth_; ++d)
        for (std::uint32_t i = offsets_[d]; i < offsets_[d + 1]; ++i)
            depths_[i] = static_cast<std::uint8_t>(d);
}

Vertex TreeTruncation::parent(Vertex v) const {
    if (v.idx == 0) throw std::domain_error("parent: apex has no parent in the truncation");
    return Vertex{static_cast<std::uint32_t>((v.idx - 1) / q_)};
}

Vertex TreeTruncation::child(Vertex v, long k) const {
    if (k < 0 || k >= q_) throw std::out_of_range("child: digit out of range");
    if (is_leaf(v)) throw std::domain_error("child: vertex is on the bottom level");
    return Vertex{static_cast<std::uint32_t>(static_cast<std::uint64_t>(v.idx) * q_ + 1 + k)};
}

long TreeTruncation::neighbor_count(Vertex v) const {
    long n = v.idx == 0 ? 0 : 1;
    if (!is_leaf(v)) n += q_;
    return n;
}

std::vector<Vertex> TreeTruncation::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    out.reserve(q_ + 1);
    if (v.idx != 0) out.push_back(parent(v));
    if (!is_leaf(v))
        for (long k = 0; k < q_; ++k) out.push_back(child(v, k));
    return out;
}

Vertex TreeTruncation::ancestor(Vertex v, long steps) const {
    if (steps < 0 || steps > depth_of(v))
        throw std::domain_error("ancestor: not that many levels above the vertex");
    std::uint32_t i = v.idx;
    for (long s = 0; s < steps; ++s) i = (i - 1) / q_;
    return Vertex{i};
}

bool TreeTruncation::lies_below(Vertex x, Vertex y) const {
    long dx = depth_of(x), dy = depth_of(y);
    if (dx < dy) return false;
    return ancestor(x, dx - dy) == y;
}

long TreeTruncation::distance(Vertex x, Vertex y) const {
    long dx = depth_of(x), dy = depth_of(y);
    long steps = 0;
    std::uint32_t a = x.idx, b = y.idx;
    while (dx > dy) { a = (a - 1) / q_; --dx; ++steps; }
    while (dy > dx) { b = (b - 1) / q_; --dy; ++steps; }
    while (a != b) {
        a = (a - 1) / q_;
        b = (b - 1) / q_;
        steps += 2;
    }
    return steps;
}

std::pair<Vertex, std::uint64_t> TreeTruncation::descendant_range(Vertex v, long rel_depth) const {
    if (rel_depth < 0 || depth_of(v) + rel_depth > depth_)
        throw std::domain_error("descendant_range: level below the truncation");
    std::uint64_t first = v.idx;
    std::uint64_t count = 1;
    for (long s = 0; s < rel_depth; ++s) {
        first = first * q_ + 1;
        count *= q_;
    }
    return {Vertex{static_cast<std::uint32_t>(first)}, count};
}

std::string TreeTruncation::word(Vertex v) const {
    if (!valid(v)) throw std::out_of_range("word: vertex outside truncation");
    std::string w(depth_of(v), '0');
    std::uint32_t i = v.idx;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        *it = static_cast<char>('0' + (i - 1) % q_);
        i = (i - 1) / q_;
    }
    return w;
}

Vertex TreeTruncation::vertex_at(const std::string& word) const {
    if (static_cast<long>(word.size()) > depth_)
        throw std::out_of_range("vertex_at: word longer than truncation depth");
    std::uint64_t i = 0;
    for (char c : word) {
        if (c < '0' || c >= '0' + q_)
            throw std::invalid_argument("vertex_at: invalid digit in word");
        i = i * q_ + 1 + (c - '0');
    }
    return Vertex{static_cast<std::uint32_t>(i)};
}

}  // namespace czhardy
