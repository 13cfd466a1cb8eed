#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hfree {

using Vertex = std::uint32_t;
using EdgeRank = std::uint64_t;

/// Largest supported uniformity. Keeps per-edge scratch space on the stack.
inline constexpr int kMaxUniformity = 8;

/// Binomial coefficient C(n, r). Throws std::overflow_error past 2^63.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// Table of C(i, j) for i <= n and j <= k, used for colex ranking.
class BinomialTable {
public:
    BinomialTable() = default;
    BinomialTable(std::uint32_t n, int k);

    std::uint64_t operator()(std::uint32_t i, int j) const {
        return table_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(j)];
    }

private:
    std::vector<std::uint64_t> table_;
    std::size_t stride_ = 0;
};

/// A k-subset of {0, ..., n-1}, stored strictly increasing.
class Edge {
public:
    Edge() = default;
    /// Sorts the input; throws std::invalid_argument on repeated vertices.
    explicit Edge(std::vector<Vertex> vertices);
    Edge(std::initializer_list<Vertex> vertices) : Edge(std::vector<Vertex>(vertices)) {}

    std::span<const Vertex> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }
    bool contains(Vertex x) const;

    auto operator<=>(const Edge&) const = default;

private:
    std::vector<Vertex> vertices_;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);

/// Colex rank: sum over sorted vertices v_j of C(v_j, j+1).
/// Throws std::invalid_argument if the tuple is not strictly increasing or
/// has a vertex >= n.
EdgeRank edge_rank(std::span<const Vertex> vertices, std::uint32_t n);
inline EdgeRank edge_rank(const Edge& edge, std::uint32_t n) { return edge_rank(edge.vertices(), n); }
Edge edge_unrank(EdgeRank rank, std::uint32_t n, int k);

/// k-uniform hypergraph on {0, ..., n-1} with a co-degree index over
/// (k-1)-sets and a per-vertex incidence index.
///
/// Membership is a dense bitset over colex ranks when C(n,k) is small enough,
/// otherwise a hash set; the co-degree index follows the same rule over
/// C(n,k-1). Single writer; concurrent readers are fine once frozen.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::uint32_t n, int k);

    std::uint32_t n() const { return n_; }
    int k() const { return k_; }
    std::size_t edge_count() const { return edge_count_; }
    std::uint64_t possible_edges() const { return total_edges_; }
    const BinomialTable& binomials() const { return binom_; }

    bool contains(const Edge& e) const;
    bool contains_rank(EdgeRank r) const;

    /// Throws std::invalid_argument on malformed or duplicate edges.
    void add_edge(const Edge& e);
    /// Throws std::invalid_argument if the edge is absent.
    void remove_edge(const Edge& e);
    /// Unchecked forms for the process loop: `sorted` holds k ascending,
    /// in-range vertices. Return false on duplicate / absent edge.
    bool add_sorted(const Vertex* sorted);
    bool remove_sorted(const Vertex* sorted);

    /// Vertices x with U + {x} an edge, ascending. |U| must be k-1.
    std::vector<Vertex> neighbors_of(std::span<const Vertex> u) const;
    std::size_t codegree(std::span<const Vertex> u) const;

    /// Max over i-sets U of d_H(U). 1 <= i <= k.
    std::size_t max_i_degree(int i) const;

    /// All edges in lexicographic order of their vertex tuples.
    std::vector<Edge> edges() const;
    std::vector<EdgeRank> edge_ranks() const;

    // Hot-path views used by the embedder. `sorted_u` must be ascending.
    std::span<const Vertex> neighbor_view(const Vertex* sorted_u) const;
    std::span<const EdgeRank> incident_view(Vertex v) const { return incidence_[v]; }
    EdgeRank rank_sorted(const Vertex* sorted, int len) const {
        EdgeRank r = 0;
        for (int j = 0; j < len; ++j) r += binom_(sorted[j], j + 1);
        return r;
    }
    /// Writes the sorted vertices of the edge with this rank into out[0..k).
    void unrank_into(EdgeRank rank, Vertex* out) const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b);

private:
    void validate(const Edge& e) const;
    std::vector<Vertex>& codegree_list(EdgeRank sub_rank);
    const std::vector<Vertex>* find_codegree_list(EdgeRank sub_rank) const;

    std::uint32_t n_ = 0;
    int k_ = 0;
    std::uint64_t total_edges_ = 0;
    std::size_t edge_count_ = 0;
    BinomialTable binom_;

    bool dense_edges_ = true;
    std::vector<std::uint64_t> edge_bits_;
    std::unordered_set<EdgeRank> edge_hash_;

    bool dense_index_ = true;
    std::vector<std::vector<Vertex>> codegree_dense_;
    std::unordered_map<EdgeRank, std::vector<Vertex>> codegree_sparse_;

    std::vector<std::vector<EdgeRank>> incidence_;
};

/// Text format: first line "n k", then one edge per line as ascending,
/// space-separated vertex indices. Edges are written in lexicographic order.
void write_hypergraph(std::ostream& os, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& is);
std::string to_text(const Hypergraph& h);
Hypergraph from_text(const std::string& text);

}  // namespace hfree
