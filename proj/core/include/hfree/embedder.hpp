#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hfree/hypergraph.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

/// Total injective map from pattern vertices to host vertices; image[x] is
/// the host vertex of pattern vertex x.
struct Embedding {
    std::vector<Vertex> image;
    auto operator<=>(const Embedding&) const = default;
};

/// A copy is identified by the sorted colex ranks of its image edges.
using CopyEdges = std::vector<EdgeRank>;

struct EmbedderOptions {
    /// Try one anchoring per orbit of the pattern's automorphism group in
    /// existence queries. Counting queries always use every anchoring.
    bool prune_automorphisms = false;
};

/// Search step over one pattern edge. Vertex ids index pattern vertices.
struct SearchStep {
    enum class Kind : std::uint8_t {
        check,            ///< every vertex already mapped; test membership
        extend_codegree,  ///< k-1 mapped; candidates from the co-degree index
        extend_incident,  ///< some mapped; scan edges through one mapped image
        extend_free       ///< nothing mapped; scan every host edge
    };
    Kind kind = Kind::check;
    std::uint8_t mapped_count = 0;
    std::uint8_t fresh_count = 0;
    std::uint8_t mapped[kMaxUniformity] = {};
    std::uint8_t fresh[kMaxUniformity] = {};
};

/// Edge order for a search that starts with `seeds` already mapped: the next
/// edge is always the one sharing the most mapped vertices (ties by index).
struct SearchPlan {
    std::vector<std::uint8_t> seeds;
    std::vector<SearchStep> steps;
    std::vector<std::uint8_t> leftovers;  ///< vertices no step touches
};

SearchPlan build_search_plan(const Pattern& p, std::span<const int> seeds, int skip_edge);

/// Anchored subgraph search for a fixed pattern. Immutable after
/// construction; const member functions are safe to call concurrently.
class Embedder {
public:
    explicit Embedder(Pattern pattern, EmbedderOptions options = {});

    const Pattern& pattern() const { return pattern_; }
    const EmbedderOptions& options() const { return options_; }
    /// Number of (edge, ordering) anchorings tried by existence queries.
    std::size_t anchoring_count() const { return anchorings_.size(); }

    /// True iff h has a copy of the pattern whose image uses edge e.
    /// e must already be an edge of h.
    bool creates_copy_with_anchor(const Hypergraph& h, const Edge& e) const;
    /// Hot-path form; `sorted` holds the k vertices of e in ascending order.
    bool creates_copy_with_anchor(const Hypergraph& h, const Vertex* sorted) const;
    std::optional<Embedding> find_copy_with_anchor(const Hypergraph& h, const Edge& e) const;

    /// Labeled embeddings whose image contains f.
    std::size_t count_embeddings_containing(const Hypergraph& h, const Edge& f) const;
    /// Distinct copies (by image edge set) containing f, sorted.
    std::vector<CopyEdges> copies_containing(const Hypergraph& h, const Edge& f) const;
    std::size_t count_copies_containing(const Hypergraph& h, const Edge& f) const {
        return copies_containing(h, f).size();
    }

    /// Unanchored search over the whole host.
    bool contains_copy(const Hypergraph& h) const;
    std::optional<Embedding> find_copy(const Hypergraph& h) const;
    std::vector<CopyEdges> all_copies(const Hypergraph& h) const;

private:
    struct Anchoring {
        int edge;
        std::uint8_t order[kMaxUniformity];  ///< seed j maps to e[order[j]]
    };

    Pattern pattern_;
    EmbedderOptions options_;
    std::vector<SearchPlan> anchor_plans_;
    std::vector<Anchoring> all_anchorings_;
    std::vector<Anchoring> anchorings_;
};

/// One-shot wrappers over Embedder.
bool creates_copy_with_anchor(const Hypergraph& h, const Pattern& p, const Edge& e);
std::size_t count_copies_containing(const Hypergraph& h, const Pattern& p, const Edge& f);

/// Copies of the rooted pattern F-hat in h with root[i] -> v_tuple[i], the
/// root neighborhood mapped into T and every other vertex outside T.
/// Returns labeled embeddings. Throws std::invalid_argument if v_tuple meets
/// T, has the wrong length, or repeats a vertex.
std::vector<Embedding> enumerate_rooted_extensions(const Hypergraph& h, const RootedPattern& rp,
                                                   std::span<const Vertex> v_tuple, std::span<const Vertex> t_set);

/// Image edge set of an embedding of `p` into a host with the given n.
CopyEdges copy_edges(const Pattern& p, const Embedding& emb, const Hypergraph& host);

struct PackingResult {
    std::size_t size = 0;          ///< exact maximum when `exact`, else greedy
    std::size_t greedy_size = 0;   ///< maximal family from the greedy pass
    std::vector<std::size_t> witness;
    bool exact = false;
};

/// Edge-disjoint packing of copies. Greedy in (size, lex) order; exact
/// branch-and-bound on top when there are at most 20 copies.
PackingResult max_edge_disjoint_packing(const std::vector<CopyEdges>& copies);

/// Whether some automorphism of p extends the partial map
/// from[i] -> to[i]. Used to group anchorings into orbits.
bool extends_to_automorphism(const Pattern& p, std::span<const int> from, std::span<const int> to);

}  // namespace hfree
