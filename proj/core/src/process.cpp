#include "hfree/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "hfree/random.hpp"

namespace hfree {

MemoryBudgetExceeded::MemoryBudgetExceeded(std::uint64_t possible_edges, std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("memory budget exceeded: C(n,k)=" + std::to_string(possible_edges) + " needs " +
                         std::to_string(required) + " bytes, budget " + std::to_string(budget)),
      possible_edges_(possible_edges),
      required_(required) {}

std::uint64_t estimated_memory(std::uint32_t n, int k) {
    const std::uint64_t edges = binomial(n, static_cast<std::uint64_t>(k));
    const std::uint64_t subsets = binomial(n, static_cast<std::uint64_t>(k - 1));
    const uint128 bytes = static_cast<uint128>(edges) * 8 + edges / 8 +
                                    static_cast<uint128>(subsets) * sizeof(std::vector<Vertex>);
    return bytes > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                             : static_cast<std::uint64_t>(bytes);
}

void check_memory_budget(std::uint32_t n, int k, std::uint64_t budget) {
    std::uint64_t edges = 0;
    try {
        edges = binomial(n, static_cast<std::uint64_t>(k));
    } catch (const std::overflow_error&) {
        throw MemoryBudgetExceeded(std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max(),
                                   budget);
    }
    const std::uint64_t need = estimated_memory(n, k);
    if (need > budget) throw MemoryBudgetExceeded(edges, need, budget);
}

std::uint64_t BirthOrder::prefix_length(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
    const auto total = static_cast<long double>(permutation.size());
    const auto len = static_cast<std::uint64_t>(std::floor(static_cast<long double>(p) * total));
    return std::min<std::uint64_t>(len, permutation.size());
}

BirthOrder make_birth_order(std::uint64_t seed, std::uint32_t n, int k, std::uint64_t memory_budget) {
    check_memory_budget(n, k, memory_budget);
    BirthOrder order{seed, n, k, {}};
    order.permutation.resize(binomial(n, static_cast<std::uint64_t>(k)));
    std::iota(order.permutation.begin(), order.permutation.end(), EdgeRank{0});
    SplitMix64 rng(seed);
    for (std::uint64_t i = order.permutation.size(); i > 1; --i) {
        std::swap(order.permutation[i - 1], order.permutation[rng.below(i)]);
    }
    return order;
}

std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t total, std::uint64_t limit) {
    std::vector<std::uint64_t> out{limit};
    for (std::uint64_t div = 1; total > 0; div <<= 1) {
        const std::uint64_t c = (total - 1) / div + 1;
        if (c <= limit) out.push_back(c);
        if (c == 1) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProcessResult run_process(const BirthOrder& order, const Embedder& embedder, double p_stop) {
    if (!(p_stop > 0.0 && p_stop <= 1.0)) throw std::invalid_argument("p_stop must lie in (0, 1]");
    const Pattern& pattern = embedder.pattern();
    if (pattern.h() == 0) throw std::invalid_argument("pattern has no edges");
    if (pattern.k() != order.k) throw std::invalid_argument("pattern and birth order uniformity differ");

    ProcessResult res;
    res.final_graph = Hypergraph(order.n, order.k);
    res.seed = order.seed;
    res.n = order.n;
    res.pattern_id = pattern.name();
    Hypergraph& h = res.final_graph;
    const int k = order.k;

    const std::uint64_t limit = order.prefix_length(p_stop);
    const auto checkpoints = checkpoint_schedule(order.size(), limit);
    std::size_t next_cp = 0;
    if (checkpoints[0] == 0) {
        res.trajectory.push_back({0, 0, 0});
        ++next_cp;
    }

    Vertex vs[kMaxUniformity];
    Vertex sub[kMaxUniformity];
    for (std::uint64_t j = 0; j < limit; ++j) {
        h.unrank_into(order.permutation[j], vs);
        h.add_sorted(vs);
        if (embedder.creates_copy_with_anchor(h, vs)) {
            h.remove_sorted(vs);
        } else {
            ++res.accepted;
            for (int skip = 0; skip < k; ++skip) {
                int m = 0;
                for (int i = 0; i < k; ++i)
                    if (i != skip) sub[m++] = vs[i];
                res.max_codegree = std::max<std::uint64_t>(res.max_codegree, h.neighbor_view(sub).size());
            }
        }
        if (next_cp < checkpoints.size() && checkpoints[next_cp] == j + 1) {
            res.trajectory.push_back({j + 1, res.accepted, res.max_codegree});
            ++next_cp;
        }
    }
    res.examined = limit;
    return res;
}

ProcessResult run_process(std::uint32_t n, const Pattern& pattern, std::uint64_t seed, const ProcessOptions& options) {
    if (!(options.p_stop > 0.0 && options.p_stop <= 1.0)) throw std::invalid_argument("p_stop must lie in (0, 1]");
    if (pattern.h() == 0) throw std::invalid_argument("pattern has no edges");
    const BirthOrder order = make_birth_order(seed, n, pattern.k(), options.memory_budget);
    const Embedder embedder(pattern, options.embedder);
    return run_process(order, embedder, options.p_stop);
}

bool verify_f_free(const Hypergraph& h, const Pattern& pattern) { return !Embedder(pattern).contains_copy(h); }

bool verify_maximal(const Hypergraph& h, const Pattern& pattern, std::uint32_t n) {
    if (h.n() != n) throw std::invalid_argument("hypergraph vertex count differs from n");
    const Embedder embedder(pattern);
    Hypergraph probe = h;
    Vertex vs[kMaxUniformity];
    for (EdgeRank r = 0; r < probe.possible_edges(); ++r) {
        if (probe.contains_rank(r)) continue;
        probe.unrank_into(r, vs);
        probe.add_sorted(vs);
        const bool completes = embedder.creates_copy_with_anchor(probe, vs);
        probe.remove_sorted(vs);
        if (!completes) return false;
    }
    return true;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& trajectory) {
    os << "steps_examined,accepted,max_codegree\n";
    for (const auto& t : trajectory) os << t.steps_examined << ',' << t.accepted << ',' << t.max_codegree << '\n';
}

}  // namespace hfree
