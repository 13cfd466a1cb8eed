#pragma once

// Brute-force reference implementations. Deliberately naive: plain sets of
// sorted vertex vectors, exhaustive injective maps, exhaustive subsets. They
// share no code with the library beyond reading a Hypergraph's edge list.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "hfree/hypergraph.hpp"
#include "hfree/pattern.hpp"

namespace oracle {

using VSet = std::vector<std::uint32_t>;
using EdgeSet = std::set<VSet>;

inline VSet sorted(VSet v) {
    std::sort(v.begin(), v.end());
    return v;
}

inline EdgeSet edge_set(const hfree::Hypergraph& h) {
    EdgeSet out;
    for (const auto& e : h.edges()) out.insert(VSet(e.vertices().begin(), e.vertices().end()));
    return out;
}

inline std::vector<VSet> pattern_edges(const hfree::Pattern& p) {
    std::vector<VSet> out;
    for (const auto& e : p.edges()) out.emplace_back(e.vertices().begin(), e.vertices().end());
    return out;
}

// Calls fn(image) for every injective map [0, v) -> [0, n).
inline void for_each_injection(int v, std::uint32_t n, const std::function<void(const VSet&)>& fn) {
    VSet image(static_cast<std::size_t>(v));
    std::vector<bool> used(n, false);
    std::function<void(int)> rec = [&](int x) {
        if (x == v) {
            fn(image);
            return;
        }
        for (std::uint32_t y = 0; y < n; ++y) {
            if (used[y]) continue;
            used[y] = true;
            image[static_cast<std::size_t>(x)] = y;
            rec(x + 1);
            used[y] = false;
        }
    };
    rec(0);
}

inline std::set<EdgeSet> copies_of(const hfree::Pattern& p, const EdgeSet& host, std::uint32_t n) {
    const auto pe = pattern_edges(p);
    std::set<EdgeSet> out;
    for_each_injection(p.v(), n, [&](const VSet& img) {
        EdgeSet copy;
        for (const auto& e : pe) {
            VSet im;
            for (auto x : e) im.push_back(img[x]);
            im = sorted(im);
            if (!host.contains(im)) return;
            copy.insert(im);
        }
        out.insert(copy);
    });
    return out;
}

inline std::set<EdgeSet> copies_through(const hfree::Pattern& p, const EdgeSet& host, std::uint32_t n,
                                        const VSet& f) {
    std::set<EdgeSet> out;
    for (auto& c : copies_of(p, host, n))
        if (c.contains(f)) out.insert(c);
    return out;
}

// Max edges spanned by an i-vertex subset, i < v; h_v is h - 1.
inline std::vector<int> h_table(const hfree::Pattern& p) {
    const auto pe = pattern_edges(p);
    const int v = p.v(), k = p.k();
    std::vector<int> out;
    for (int i = k + 1; i <= v; ++i) {
        if (i == v) {
            out.push_back(static_cast<int>(pe.size()) - 1);
            break;
        }
        std::vector<bool> pick(static_cast<std::size_t>(v), false);
        std::fill(pick.begin(), pick.begin() + i, true);
        int best = 0;
        do {
            int cnt = 0;
            for (const auto& e : pe)
                if (std::all_of(e.begin(), e.end(), [&](std::uint32_t x) { return pick[x]; })) ++cnt;
            best = std::max(best, cnt);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        out.push_back(best);
    }
    return out;
}

// Same table from edge subsets: an edge subset spanning s <= i vertices is a
// subgraph on i vertices after padding. Only for small h.
inline std::vector<int> h_table_by_edge_subsets(const hfree::Pattern& p) {
    const auto pe = pattern_edges(p);
    const int v = p.v(), k = p.k();
    const auto h = pe.size();
    std::vector<int> out(static_cast<std::size_t>(v - k), 0);
    for (std::uint64_t mask = 0; mask < (1ULL << h); ++mask) {
        std::set<std::uint32_t> span;
        int cnt = 0;
        for (std::size_t j = 0; j < h; ++j)
            if (mask >> j & 1) {
                ++cnt;
                span.insert(pe[j].begin(), pe[j].end());
            }
        if (cnt == static_cast<int>(h)) continue;  // proper subgraphs only
        for (int i = std::max<int>(k + 1, static_cast<int>(span.size())); i <= v; ++i)
            out[static_cast<std::size_t>(i - k - 1)] = std::max(out[static_cast<std::size_t>(i - k - 1)], cnt);
    }
    return out;
}

inline bool strictly_balanced(const hfree::Pattern& p) {
    const auto table = h_table(p);
    const std::int64_t h = static_cast<std::int64_t>(p.h()), v = p.v(), k = p.k();
    for (std::int64_t i = k + 1; i < v; ++i) {
        const std::int64_t hi = table[static_cast<std::size_t>(i - k - 1)];
        if (hi < 1) continue;
        // (h-1)/(v-k) > (hi-1)/(i-k), cross-multiplied
        if (!((h - 1) * (i - k) > (hi - 1) * (v - k))) return false;
    }
    return true;
}

inline int max_codegree(const hfree::Pattern& p) {
    const auto pe = pattern_edges(p);
    int best = 0;
    std::vector<bool> pick(static_cast<std::size_t>(p.v()), false);
    std::fill(pick.begin(), pick.begin() + p.k() - 1, true);
    do {
        int cnt = 0;
        for (const auto& e : pe) {
            int in = 0;
            for (auto x : e) in += pick[x] ? 1 : 0;
            if (in == p.k() - 1) ++cnt;
        }
        best = std::max(best, cnt);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

// Greedy process over an explicit edge order with a brute-force copy test.
inline EdgeSet greedy(const hfree::Pattern& p, std::uint32_t n, const std::vector<VSet>& order) {
    EdgeSet h;
    for (const auto& e : order) {
        h.insert(e);
        if (!copies_through(p, h, n, e).empty()) h.erase(e);
    }
    return h;
}

// Labeled rooted extensions: root[i] -> vs[i], neighborhood into T, rest outside T.
inline std::size_t rooted_extensions(const hfree::RootedPattern& rp, const EdgeSet& host, std::uint32_t n,
                                     const VSet& vs, const VSet& t, std::set<EdgeSet>* copies = nullptr) {
    const auto pe = pattern_edges(rp.base);
    const std::set<std::uint32_t> tset(t.begin(), t.end());
    std::size_t count = 0;
    for_each_injection(rp.base.v(), n, [&](const VSet& img) {
        for (std::size_t i = 0; i < rp.root.size(); ++i)
            if (img[static_cast<std::size_t>(rp.root[i])] != vs[i]) return;
        for (int x = 0; x < rp.base.v(); ++x) {
            const bool is_root = std::find(rp.root.begin(), rp.root.end(), x) != rp.root.end();
            if (is_root) continue;
            const bool in_nbhd =
                std::find(rp.root_neighborhood.begin(), rp.root_neighborhood.end(), x) != rp.root_neighborhood.end();
            if (in_nbhd != tset.contains(img[static_cast<std::size_t>(x)])) return;
        }
        EdgeSet copy;
        for (const auto& e : pe) {
            VSet im;
            for (auto x : e) im.push_back(img[x]);
            im = sorted(im);
            if (!host.contains(im)) return;
            copy.insert(im);
        }
        ++count;
        if (copies) copies->insert(copy);
    });
    return count;
}

// Largest r such that some ordering of r copies has each copy contribute an
// edge missing from all earlier ones. Exhaustive over ordered selections.
inline std::size_t max_cluster(const std::vector<EdgeSet>& copies) {
    std::size_t best = 0;
    std::vector<bool> used(copies.size(), false);
    std::function<void(const EdgeSet&, std::size_t)> rec = [&](const EdgeSet& covered, std::size_t depth) {
        best = std::max(best, depth);
        for (std::size_t i = 0; i < copies.size(); ++i) {
            if (used[i]) continue;
            bool fresh = false;
            for (const auto& e : copies[i]) fresh |= !covered.contains(e);
            if (!fresh) continue;
            used[i] = true;
            EdgeSet next = covered;
            next.insert(copies[i].begin(), copies[i].end());
            rec(next, depth + 1);
            used[i] = false;
        }
    };
    rec({}, 0);
    return best;
}

inline std::vector<VSet> all_k_sets(std::uint32_t n, int k) {
    std::vector<VSet> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        VSet e;
        for (std::uint32_t x = 0; x < n; ++x)
            if (pick[x]) e.push_back(x);
        out.push_back(e);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

inline hfree::Hypergraph to_hypergraph(const EdgeSet& edges, std::uint32_t n, int k) {
    hfree::Hypergraph h(n, k);
    for (const auto& e : edges) h.add_edge(hfree::Edge(std::vector<hfree::Vertex>(e.begin(), e.end())));
    return h;
}

}  // namespace oracle
