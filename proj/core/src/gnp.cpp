#include "hfree/gnp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hfree {

GnpSample reduce_copies(Hypergraph base, const Embedder& embedder) {
    GnpSample s;
    s.reduced = Hypergraph(base.n(), base.k());
    Vertex vs[kMaxUniformity];
    for (EdgeRank r : base.edge_ranks()) {
        base.unrank_into(r, vs);
        const Edge e(std::vector<Vertex>(vs, vs + base.k()));
        if (auto witness = embedder.find_copy_with_anchor(base, e)) {
            s.removal_witness.emplace(r, std::move(*witness));
            ++s.removed_edges;
        } else {
            s.reduced.add_sorted(vs);
        }
    }
    s.base = std::move(base);
    return s;
}

GnpSample sample_gnp(const BirthOrder& order, double p, const Embedder& embedder) {
    const std::uint64_t len = order.prefix_length(p);
    Hypergraph base(order.n, order.k);
    Vertex vs[kMaxUniformity];
    for (std::uint64_t j = 0; j < len; ++j) {
        base.unrank_into(order.permutation[j], vs);
        base.add_sorted(vs);
    }
    GnpSample s = reduce_copies(std::move(base), embedder);
    s.p = p;
    s.seed = order.seed;
    return s;
}

GnpSample sample_gnp(std::uint32_t n, double p, const Pattern& pattern, std::uint64_t seed,
                     std::uint64_t memory_budget) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    return sample_gnp(make_birth_order(seed, n, pattern.k(), memory_budget), p, Embedder(pattern));
}

ClampedValue default_p(std::uint32_t n, const PatternProfile& profile, double c2) {
    if (!profile.theorem_applicable) throw std::invalid_argument("default p needs a pattern the theorem applies to");
    if (n < 3) throw std::invalid_argument("default p needs n >= 3");
    if (!(c2 > 0.0)) throw std::invalid_argument("c2 must be positive");
    const double ln_n = std::log(static_cast<double>(n));
    const double inner = std::pow(static_cast<double>(n), profile.v - profile.k) * ln_n;
    const double p = 1.0 / (c2 * std::pow(inner, 1.0 / (profile.h - 1)));
    if (p > 1.0) return {1.0, true};
    return {p, false};
}

ClampedValue default_t(std::uint32_t n, const PatternProfile& profile, double c1, double c2) {
    if (profile.codeg < 2) throw std::invalid_argument("default t needs maximum co-degree >= 2");
    const ClampedValue p = default_p(n, profile, c2);
    const double ln_n = std::log(static_cast<double>(n));
    return {c1 * static_cast<double>(n) * p.value * std::pow(ln_n, 3.0 / (profile.codeg - 1)), p.clamped};
}

namespace {

std::size_t new_edge_count(const CopyEdges& c, const std::set<EdgeRank>& covered) {
    return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [&](EdgeRank r) { return !covered.contains(r); }));
}

struct ClusterSearch {
    const std::vector<CopyEdges>& copies;
    std::size_t target;
    std::uint64_t budget;
    std::uint64_t explored = 0;
    bool exhausted = false;
    std::vector<std::size_t> current;
    std::vector<std::size_t> best;
    std::set<EdgeRank> covered;

    // Returns true when the target is reached or the budget is gone.
    bool dfs(std::vector<std::size_t> candidates) {
        if (current.size() > best.size()) best = current;
        if (best.size() >= target) return true;
        if (current.size() + candidates.size() <= best.size()) return false;
        // fewest new edges first: keeps the union small for later copies
        std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
            return new_edge_count(copies[a], covered) < new_edge_count(copies[b], covered);
        });
        for (std::size_t c : candidates) {
            if (++explored > budget) {
                exhausted = true;
                return true;
            }
            std::vector<EdgeRank> added;
            for (EdgeRank r : copies[c])
                if (covered.insert(r).second) added.push_back(r);
            current.push_back(c);
            std::vector<std::size_t> next;
            for (std::size_t o : candidates)
                if (o != c && new_edge_count(copies[o], covered) > 0) next.push_back(o);
            const bool stop = dfs(std::move(next));
            current.pop_back();
            for (EdgeRank r : added) covered.erase(r);
            if (stop) return true;
            if (current.size() + candidates.size() <= best.size()) return false;
        }
        return false;
    }
};

}  // namespace

ClusterReport cluster_report(const Hypergraph& h, const Pattern& pattern, const Edge& f, std::size_t r_target,
                             std::uint64_t budget) {
    if (!h.contains(f)) throw std::invalid_argument("cluster edge is not in the host");
    ClusterReport rep;
    rep.f = f;
    const auto copies = Embedder(pattern).copies_containing(h, f);
    rep.copies_through_f = copies.size();
    if (copies.empty() || r_target == 0) return rep;

    ClusterSearch search{copies, r_target, budget, 0, false, {}, {}, {}};
    std::vector<std::size_t> all(copies.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    search.dfs(std::move(all));
    rep.max_cluster_found = search.best.size();
    rep.budget_exhausted = search.exhausted;
    rep.states_explored = std::min(search.explored, budget);
    for (std::size_t i : search.best) rep.witness.push_back(copies[i]);
    return rep;
}

std::string cluster_record(const ClusterReport& r) {
    std::ostringstream os;
    os << "edge=";
    for (std::size_t i = 0; i < r.f.size(); ++i) os << (i ? "-" : "") << r.f[i];
    os << " z1=" << r.copies_through_f << " max_cluster=" << r.max_cluster_found
       << " exact=" << (r.budget_exhausted ? "false" : "true") << " states=" << r.states_explored;
    return os.str();
}

ExtensionCounts count_extensions(const GnpSample& sample, const RootedPattern& rp, std::span<const Vertex> v_tuple,
                                 std::span<const Vertex> t_set) {
    ExtensionCounts out;
    auto tally = [&](const Hypergraph& host, std::size_t& copies, std::size_t& labeled) {
        const auto embs = enumerate_rooted_extensions(host, rp, v_tuple, t_set);
        labeled = embs.size();
        std::set<CopyEdges> distinct;
        for (const auto& e : embs) distinct.insert(copy_edges(rp.base, e, host));
        copies = distinct.size();
    };
    tally(sample.base, out.x, out.x_labeled);
    tally(sample.reduced, out.x_minus, out.x_minus_labeled);
    return out;
}

}  // namespace hfree
