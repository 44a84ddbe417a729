#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace czhardy {

// Finite truncation of a homogeneous tree of order q+1, addressed as the full
// cone below a distinguished apex: every vertex has q children, the apex has
// no parent inside the truncation, and levels run from apex_level at the top
// down to apex_level - depth at the leaves.
struct TreeConfig {
    long q = 2;
    long depth = 1;
    // Level of the apex.  Unset means `depth`, which places the bottom level
    // at 0 so that every vertex weight q^level is an integer.  Negative apex
    // levels are allowed; weights then go fractional.
    std::optional<long> apex_level;

    void validate() const;
};

// Dense vertex handle.  Index 0 is the apex; children of i are q*i+1..q*i+q,
// so indices are breadth-first by level and left-to-right within a level.
struct Vertex {
    std::uint32_t idx = 0;

    friend bool operator==(Vertex a, Vertex b) { return a.idx == b.idx; }
    friend bool operator!=(Vertex a, Vertex b) { return a.idx != b.idx; }
    friend bool operator<(Vertex a, Vertex b) { return a.idx < b.idx; }
};

class TreeTruncation {
  public:
    explicit TreeTruncation(TreeConfig config);

    long q() const { return q_; }
    long depth() const { return depth_; }
    long apex_level() const { return apex_level_; }
    std::uint32_t vertex_count() const { return count_; }
    Vertex apex() const { return Vertex{0}; }

    long depth_of(Vertex v) const { return depths_[v.idx]; }
    long level(Vertex v) const { return apex_level_ - depths_[v.idx]; }

    bool has_parent(Vertex v) const { return v.idx != 0; }
    Vertex parent(Vertex v) const;
    Vertex child(Vertex v, long k) const;
    bool is_leaf(Vertex v) const { return depths_[v.idx] == depth_; }
    long neighbor_count(Vertex v) const;
    // Parent first (if any), then children in digit order.
    std::vector<Vertex> neighbors(Vertex v) const;

    // Ancestor `steps` edges above v; steps must not exceed depth_of(v).
    Vertex ancestor(Vertex v, long steps) const;

    // True iff y lies on the upward path from x to the apex (x == y counts).
    bool lies_below(Vertex x, Vertex y) const;

    // Graph distance; exact, O(depth).
    long distance(Vertex x, Vertex y) const;

    // Descendants of v exactly rel_depth levels further down form a
    // contiguous index range [first, first + count).
    std::pair<Vertex, std::uint64_t> descendant_range(Vertex v, long rel_depth) const;

    // First index at a given depth; depth may equal depth()+1 (one past end).
    std::uint32_t first_index_at_depth(long d) const { return offsets_[d]; }
    std::uint32_t vertices_at_depth(long d) const { return offsets_[d + 1] - offsets_[d]; }

    // Word addressing: the apex is the empty word, each further character is
    // a child digit '0'..'q-1'.
    std::string word(Vertex v) const;
    Vertex vertex_at(const std::string& word) const;

    bool valid(Vertex v) const { return v.idx < count_; }

  private:
    long q_;
    long depth_;
    long apex_level_;
    std::uint32_t count_;
    std::vector<std::uint32_t> offsets_;  // first index per depth, depth_+2 entries
    std::vector<std::uint8_t> depths_;    // depth per vertex
};

}  // namespace czhardy
