#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hfree/hypergraph.hpp"

namespace hfree {

using Rational = boost::rational<std::int64_t>;

/// Renders as "p/q" (always with a denominator).
std::string to_string(const Rational& r);

/// Patterns are small: analysis enumerates all 2^v vertex subsets.
inline constexpr int kMaxPatternVertices = 16;

/// The fixed forbidden hypergraph F. Vertices are 0..v-1; edges are stored
/// as sorted vertex lists in lexicographic order.
class Pattern {
public:
    /// Validates 2 <= k <= kMaxUniformity, k+1 <= v <= kMaxPatternVertices,
    /// at least one edge, no duplicates. Throws std::invalid_argument.
    Pattern(int k, int v, std::vector<Edge> edges, std::string name = {});

    int k() const { return k_; }
    int v() const { return v_; }
    std::size_t h() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& name() const { return name_; }

    /// Bitmask of each edge's vertex set, parallel to edges().
    const std::vector<std::uint32_t>& edge_masks() const { return masks_; }
    /// Vertices in no edge. Allowed; reported as a warning by the CLI.
    std::vector<int> isolated_vertices() const;
    /// Delta_{k-1}(F).
    int max_codegree() const;
    /// d_F(U) for a (k-1)-set given as a bitmask.
    int degree_of(std::uint32_t subset_mask) const;

    /// Same pattern with vertex x renamed to perm[x].
    Pattern relabeled(const std::vector<int>& perm) const;

    Hypergraph as_hypergraph() const;

private:
    int k_;
    int v_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> masks_;
    std::string name_;
};

Pattern make_clique(int v, int k);
/// l-cycle C_{l,h}: v = h(k-l) cyclically ordered vertices, edge i spans
/// positions i(k-l) .. i(k-l)+k-1 (mod v). l = k-1 is the tight cycle.
Pattern make_ell_cycle(int ell, int h, int k);
/// Balanced complete l-partite k-graph: parts of size r, edges are the
/// k-sets meeting k distinct parts.
Pattern make_complete_multipartite(int part_size, int parts, int k);
Pattern make_diamond();
/// Two vertex-disjoint graph edges.
Pattern make_disjoint_edges();

/// Pattern file: line 1 "k v", then one edge per line.
Pattern read_pattern(std::istream& is, std::string name = {});
void write_pattern(std::ostream& os, const Pattern& p);

/// Resolves "builtin:NAME" or a file path. Builtin names:
/// triangle, diamond, disjoint-edges, clique-V-K, cycle-L-H-K,
/// multipartite-R-L-K.
Pattern load_pattern(const std::string& source);

struct ExponentSet {
    Rational codegree_upper;               ///< 1 - (v-k)/(h-1)
    Rational edges_upper;                  ///< k - (v-k)/(h-1)
    std::optional<Rational> log_upper;     ///< 3/(d-1) - 1/(h-1); empty when d = 1
    Rational edges_lower;                  ///< k - (v-k)/(h-1)
    Rational log_lower;                    ///< 1/(h-1)
    bool applicable = false;               ///< theorem hypotheses hold
};

struct PatternProfile {
    int v = 0;
    int h = 0;
    int k = 0;
    Rational k_density;
    /// h_i and delta_i for i = k+1 .. v (index i - k - 1).
    std::vector<int> h_table;
    std::vector<Rational> delta_table;
    Rational delta;
    int codeg = 0;
    bool strictly_balanced = false;
    bool theorem_applicable = false;
    ExponentSet exponents;

    int h_at(int i) const { return h_table.at(static_cast<std::size_t>(i - k - 1)); }
    Rational delta_at(int i) const { return delta_table.at(static_cast<std::size_t>(i - k - 1)); }
};

/// Throws std::invalid_argument when h = 1 (density and exponents undefined).
PatternProfile analyze(const Pattern& p);
ExponentSet predicted_exponents(const PatternProfile& profile);

/// Human-readable table.
void print_profile(std::ostream& os, const Pattern& p, const PatternProfile& profile);
/// Single line of key=value pairs, rationals as p/q.
std::string profile_record(const Pattern& p, const PatternProfile& profile);

/// F-hat: F with every edge through the root (k-1)-set removed.
struct RootedPattern {
    Pattern base;
    std::vector<int> root;                 ///< ascending (k-1)-tuple U
    std::vector<int> root_neighborhood;    ///< N_F(U), ascending
    int removed_edge_count = 0;            ///< d
};

/// Lexicographically smallest (k-1)-set with d_F(U) = Delta_{k-1}(F).
RootedPattern select_root(const Pattern& p);

}  // namespace hfree
