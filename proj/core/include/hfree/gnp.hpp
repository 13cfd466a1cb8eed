#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hfree/embedder.hpp"
#include "hfree/hypergraph.hpp"
#include "hfree/pattern.hpp"
#include "hfree/process.hpp"

namespace hfree {

/// Binomial hypergraph H_{n,p} (edges with nominal birthtime <= p in the
/// seeded birth order) and H_{n,p}^-, which drops every edge lying in a
/// copy of the pattern inside H_{n,p}.
struct GnpSample {
    Hypergraph base;
    Hypergraph reduced;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t removed_edges = 0;
    /// For each removed edge, one copy inside `base` that uses it.
    std::map<EdgeRank, Embedding> removal_witness;
};

GnpSample sample_gnp(std::uint32_t n, double p, const Pattern& pattern, std::uint64_t seed,
                     std::uint64_t memory_budget = kDefaultMemoryBudget);
GnpSample sample_gnp(const BirthOrder& order, double p, const Embedder& embedder);
/// Builds the reduced hypergraph for an explicit base.
GnpSample reduce_copies(Hypergraph base, const Embedder& embedder);

struct ClampedValue {
    double value = 0.0;
    bool clamped = false;
};

/// p = 1 / (c2 (n^{v-k} ln n)^{1/(h-1)}), clamped to (0, 1].
/// Requires a pattern the theorem applies to and n >= 3.
ClampedValue default_p(std::uint32_t n, const PatternProfile& profile, double c2);
/// t = c1 n p (ln n)^{3/(d-1)} with p = default_p(n, profile, c2). Rejects d = 1.
ClampedValue default_t(std::uint32_t n, const PatternProfile& profile, double c1, double c2 = 1.0);

struct ClusterReport {
    Edge f;
    std::size_t copies_through_f = 0;  ///< Z_{1,f}
    std::size_t max_cluster_found = 0;
    bool budget_exhausted = false;
    std::uint64_t states_explored = 0;
    /// Copies F_1..F_r of the largest cluster found, in cluster order.
    std::vector<CopyEdges> witness;
};

/// Searches for an (r_target, f)-cluster: copies through f where each later
/// copy has an edge absent from all earlier ones. The result is exact
/// (max_cluster_found = min(r_target, largest cluster)) unless the budget on
/// explored partial clusters runs out.
ClusterReport cluster_report(const Hypergraph& h, const Pattern& pattern, const Edge& f, std::size_t r_target,
                             std::uint64_t budget = 1'000'000);

/// One machine-readable line for the CLI.
std::string cluster_record(const ClusterReport& report);

struct ExtensionCounts {
    std::size_t x = 0;                ///< copies of F-hat in base (deduplicated)
    std::size_t x_minus = 0;          ///< same in reduced
    std::size_t x_labeled = 0;        ///< labeled embeddings in base
    std::size_t x_minus_labeled = 0;  ///< labeled embeddings in reduced
};

ExtensionCounts count_extensions(const GnpSample& sample, const RootedPattern& rp, std::span<const Vertex> v_tuple,
                                 std::span<const Vertex> t_set);

}  // namespace hfree
