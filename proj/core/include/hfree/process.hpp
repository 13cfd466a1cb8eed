#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfree/embedder.hpp"
#include "hfree/hypergraph.hpp"
#include "hfree/pattern.hpp"

namespace hfree {

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{2} << 30;  // 2 GiB

class MemoryBudgetExceeded : public std::runtime_error {
public:
    MemoryBudgetExceeded(std::uint64_t possible_edges, std::uint64_t required, std::uint64_t budget);
    std::uint64_t possible_edges() const { return possible_edges_; }
    std::uint64_t required_bytes() const { return required_; }

private:
    std::uint64_t possible_edges_;
    std::uint64_t required_;
};

/// Bytes needed for a run on K_n^k: the rank permutation (8 per edge), the
/// membership bitset and the co-degree index headers.
std::uint64_t estimated_memory(std::uint32_t n, int k);
/// Throws MemoryBudgetExceeded when estimated_memory(n, k) > budget.
void check_memory_budget(std::uint32_t n, int k, std::uint64_t budget);

/// Uniformly random order of all C(n,k) edge ranks, fixed by (seed, n, k).
/// Position j carries nominal birthtime (j+1)/C(n,k).
struct BirthOrder {
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    int k = 0;
    std::vector<EdgeRank> permutation;

    std::uint64_t size() const { return permutation.size(); }
    /// Number of positions with birthtime <= p, i.e. floor(p * C(n,k)).
    std::uint64_t prefix_length(double p) const;
    double birthtime(std::uint64_t position) const {
        return static_cast<double>(position + 1) / static_cast<double>(permutation.size());
    }
};

/// Fisher-Yates over the identity, driven by SplitMix64(seed).
BirthOrder make_birth_order(std::uint64_t seed, std::uint32_t n, int k,
                            std::uint64_t memory_budget = kDefaultMemoryBudget);

struct TrajectoryPoint {
    std::uint64_t steps_examined = 0;
    std::uint64_t accepted = 0;
    std::uint64_t max_codegree = 0;
    auto operator<=>(const TrajectoryPoint&) const = default;
};

struct ProcessResult {
    Hypergraph final_graph;
    std::uint64_t accepted = 0;
    std::uint64_t examined = 0;
    std::uint64_t max_codegree = 0;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t seed = 0;
    std::uint32_t n = 0;
    std::string pattern_id;
};

struct ProcessOptions {
    double p_stop = 1.0;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    EmbedderOptions embedder;
};

/// Examined-edge counts ceil(total / 2^j) that do not exceed `limit`, plus
/// `limit` itself, ascending and distinct.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t total, std::uint64_t limit);

/// Random greedy F-free process up to birthtime p_stop.
/// Throws std::invalid_argument for p_stop outside (0, 1] or an edgeless
/// pattern, MemoryBudgetExceeded for oversized runs.
ProcessResult run_process(std::uint32_t n, const Pattern& pattern, std::uint64_t seed,
                          const ProcessOptions& options = {});
/// Same process over an existing birth order (used to couple several stops).
ProcessResult run_process(const BirthOrder& order, const Embedder& embedder, double p_stop);

/// No copy of the pattern anywhere in h.
bool verify_f_free(const Hypergraph& h, const Pattern& pattern);
/// Every non-edge of K_n^k would complete a copy if added. h.n() must equal n.
bool verify_maximal(const Hypergraph& h, const Pattern& pattern, std::uint32_t n);

/// CSV with header steps_examined,accepted,max_codegree.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory);

}  // namespace hfree
