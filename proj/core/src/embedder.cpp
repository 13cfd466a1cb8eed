#include "hfree/embedder.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace hfree {

namespace {

enum class Domain : std::uint8_t { any, inside, outside };

inline void sort_small(Vertex* a, int len) {
    for (int i = 1; i < len; ++i) {
        Vertex x = a[i];
        int j = i - 1;
        while (j >= 0 && a[j] > x) {
            a[j + 1] = a[j];
            --j;
        }
        a[j + 1] = x;
    }
}

/// Backtracking executor for one SearchPlan. OnMatch is called with the full
/// image array and returns true to stop the search.
template <typename OnMatch>
class Search {
public:
    Search(const Hypergraph& host, const SearchPlan& plan, OnMatch& on_match, const Domain* domain = nullptr,
           const std::vector<char>* in_t = nullptr)
        : host_(host), plan_(plan), on_match_(on_match), domain_(domain), in_t_(in_t), k_(host.k()) {}

    /// Returns true if the callback asked to stop.
    bool run(const Vertex* seed_images) {
        used_count_ = 0;
        for (std::size_t j = 0; j < plan_.seeds.size(); ++j) {
            if (!admissible(plan_.seeds[j], seed_images[j])) return false;
            push(plan_.seeds[j], seed_images[j]);
        }
        return step(0);
    }

private:
    bool is_used(Vertex y) const {
        for (int i = 0; i < used_count_; ++i)
            if (used_[i] == y) return true;
        return false;
    }

    bool admissible(std::uint8_t x, Vertex y) const {
        if (is_used(y)) return false;
        if (domain_ != nullptr) {
            const bool inside = (*in_t_)[y] != 0;
            if (domain_[x] == Domain::inside && !inside) return false;
            if (domain_[x] == Domain::outside && inside) return false;
        }
        return true;
    }

    void push(std::uint8_t x, Vertex y) {
        image_[x] = y;
        used_[used_count_++] = y;
    }
    void pop(int count = 1) { used_count_ -= count; }

    // Assigns the fresh vertices of `s` to every ordering of `rest`.
    bool assign_permutations(std::size_t i, const SearchStep& s, Vertex* rest) {
        for (int j = 0; j < s.fresh_count; ++j)
            if (is_used(rest[j])) return false;
        do {
            int pushed = 0;
            bool ok = true;
            for (int j = 0; j < s.fresh_count; ++j) {
                if (!admissible(s.fresh[j], rest[j])) {
                    ok = false;
                    break;
                }
                push(s.fresh[j], rest[j]);
                ++pushed;
            }
            if (ok && step(i + 1)) return true;
            pop(pushed);
        } while (std::next_permutation(rest, rest + s.fresh_count));
        return false;
    }

    bool step(std::size_t i) {
        if (i == plan_.steps.size()) return leftovers(0);
        const SearchStep& s = plan_.steps[i];
        Vertex buf[kMaxUniformity];
        switch (s.kind) {
        case SearchStep::Kind::check: {
            for (int j = 0; j < k_; ++j) buf[j] = image_[s.mapped[j]];
            sort_small(buf, k_);
            return host_.contains_rank(host_.rank_sorted(buf, k_)) && step(i + 1);
        }
        case SearchStep::Kind::extend_codegree: {
            for (int j = 0; j < k_ - 1; ++j) buf[j] = image_[s.mapped[j]];
            sort_small(buf, k_ - 1);
            const std::uint8_t x = s.fresh[0];
            for (Vertex y : host_.neighbor_view(buf)) {
                if (!admissible(x, y)) continue;
                push(x, y);
                if (step(i + 1)) return true;
                pop();
            }
            return false;
        }
        case SearchStep::Kind::extend_incident: {
            Vertex pivot = image_[s.mapped[0]];
            for (int j = 1; j < s.mapped_count; ++j) {
                const Vertex y = image_[s.mapped[j]];
                if (host_.incident_view(y).size() < host_.incident_view(pivot).size()) pivot = y;
            }
            for (EdgeRank r : host_.incident_view(pivot)) {
                host_.unrank_into(r, buf);
                Vertex rest[kMaxUniformity];
                int rest_count = 0;
                int hits = 0;
                for (int j = 0; j < k_; ++j) {
                    bool mapped = false;
                    for (int m = 0; m < s.mapped_count; ++m) {
                        if (image_[s.mapped[m]] == buf[j]) {
                            mapped = true;
                            break;
                        }
                    }
                    if (mapped) ++hits;
                    else rest[rest_count++] = buf[j];
                }
                if (hits != s.mapped_count) continue;
                if (assign_permutations(i, s, rest)) return true;
            }
            return false;
        }
        case SearchStep::Kind::extend_free: {
            if (!free_edges_) free_edges_ = host_.edge_ranks();
            for (EdgeRank r : *free_edges_) {
                Vertex rest[kMaxUniformity];
                host_.unrank_into(r, rest);
                if (assign_permutations(i, s, rest)) return true;
            }
            return false;
        }
        }
        return false;
    }

    bool leftovers(std::size_t j) {
        if (j == plan_.leftovers.size()) return on_match_(static_cast<const Vertex*>(image_));
        const std::uint8_t x = plan_.leftovers[j];
        for (Vertex y = 0; y < host_.n(); ++y) {
            if (!admissible(x, y)) continue;
            push(x, y);
            if (leftovers(j + 1)) return true;
            pop();
        }
        return false;
    }

    const Hypergraph& host_;
    const SearchPlan& plan_;
    OnMatch& on_match_;
    const Domain* domain_;
    const std::vector<char>* in_t_;
    int k_;
    Vertex image_[kMaxPatternVertices] = {};
    Vertex used_[kMaxPatternVertices] = {};
    int used_count_ = 0;
    std::optional<std::vector<EdgeRank>> free_edges_;
};

std::vector<std::uint8_t> identity_order(int k) {
    std::vector<std::uint8_t> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), std::uint8_t{0});
    return order;
}

}  // namespace

SearchPlan build_search_plan(const Pattern& p, std::span<const int> seeds, int skip_edge) {
    SearchPlan plan;
    std::uint32_t mapped = 0;
    for (int s : seeds) {
        plan.seeds.push_back(static_cast<std::uint8_t>(s));
        mapped |= 1U << s;
    }
    const auto& masks = p.edge_masks();
    std::vector<bool> done(masks.size(), false);
    if (skip_edge >= 0) done[static_cast<std::size_t>(skip_edge)] = true;
    while (true) {
        int best = -1, best_overlap = -1;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (done[i]) continue;
            const int overlap = std::popcount(masks[i] & mapped);
            if (overlap > best_overlap) {
                best = static_cast<int>(i);
                best_overlap = overlap;
            }
        }
        if (best < 0) break;
        done[static_cast<std::size_t>(best)] = true;
        SearchStep s;
        for (Vertex x : p.edges()[static_cast<std::size_t>(best)].vertices()) {
            if (mapped & (1U << x)) s.mapped[s.mapped_count++] = static_cast<std::uint8_t>(x);
            else s.fresh[s.fresh_count++] = static_cast<std::uint8_t>(x);
        }
        if (s.fresh_count == 0) s.kind = SearchStep::Kind::check;
        else if (s.mapped_count == p.k() - 1) s.kind = SearchStep::Kind::extend_codegree;
        else if (s.mapped_count > 0) s.kind = SearchStep::Kind::extend_incident;
        else s.kind = SearchStep::Kind::extend_free;
        mapped |= masks[static_cast<std::size_t>(best)];
        plan.steps.push_back(s);
    }
    for (int x = 0; x < p.v(); ++x)
        if (!(mapped & (1U << x))) plan.leftovers.push_back(static_cast<std::uint8_t>(x));
    return plan;
}

bool extends_to_automorphism(const Pattern& p, std::span<const int> from, std::span<const int> to) {
    const int v = p.v();
    std::vector<char> edge_set(std::size_t{1} << v, 0);
    for (auto m : p.edge_masks()) edge_set[m] = 1;
    std::vector<int> degree(static_cast<std::size_t>(v), 0);
    for (auto m : p.edge_masks())
        for (int x = 0; x < v; ++x)
            if (m & (1U << x)) ++degree[static_cast<std::size_t>(x)];

    std::vector<int> sigma(static_cast<std::size_t>(v), -1);
    std::uint32_t mapped = 0, taken = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const int a = from[i], b = to[i];
        if (sigma[static_cast<std::size_t>(a)] == b) continue;
        if (sigma[static_cast<std::size_t>(a)] >= 0 || (taken & (1U << b))) return false;
        if (degree[static_cast<std::size_t>(a)] != degree[static_cast<std::size_t>(b)]) return false;
        sigma[static_cast<std::size_t>(a)] = b;
        mapped |= 1U << a;
        taken |= 1U << b;
    }

    auto image_mask = [&](std::uint32_t m) {
        std::uint32_t out = 0;
        for (int x = 0; x < v; ++x)
            if (m & (1U << x)) out |= 1U << sigma[static_cast<std::size_t>(x)];
        return out;
    };
    // Edges become checkable once all their vertices are mapped.
    auto consistent = [&](std::uint32_t now_mapped, std::uint32_t newly) {
        for (auto m : p.edge_masks()) {
            if ((m & ~now_mapped) != 0 || (m & newly) == 0) continue;
            if (!edge_set[image_mask(m)]) return false;
        }
        return true;
    };
    if (!consistent(mapped, mapped)) return false;

    auto extend = [&](auto&& self, int x) -> bool {
        while (x < v && (mapped & (1U << x))) ++x;
        if (x == v) return true;
        for (int y = 0; y < v; ++y) {
            if (taken & (1U << y)) continue;
            if (degree[static_cast<std::size_t>(x)] != degree[static_cast<std::size_t>(y)]) continue;
            sigma[static_cast<std::size_t>(x)] = y;
            mapped |= 1U << x;
            taken |= 1U << y;
            if (consistent(mapped, 1U << x) && self(self, x + 1)) return true;
            mapped &= ~(1U << x);
            taken &= ~(1U << y);
            sigma[static_cast<std::size_t>(x)] = -1;
        }
        return false;
    };
    return extend(extend, 0);
}

Embedder::Embedder(Pattern pattern, EmbedderOptions options) : pattern_(std::move(pattern)), options_(options) {
    const int k = pattern_.k();
    for (std::size_t a = 0; a < pattern_.h(); ++a) {
        std::vector<int> seeds;
        for (Vertex x : pattern_.edges()[a].vertices()) seeds.push_back(static_cast<int>(x));
        anchor_plans_.push_back(build_search_plan(pattern_, seeds, static_cast<int>(a)));
        auto order = identity_order(k);
        do {
            Anchoring anc{static_cast<int>(a), {}};
            std::copy(order.begin(), order.end(), anc.order);
            all_anchorings_.push_back(anc);
        } while (std::next_permutation(order.begin(), order.end()));
    }
    if (!options_.prune_automorphisms) {
        anchorings_ = all_anchorings_;
        return;
    }
    // tuple[j] = pattern vertex sent to the j-th smallest vertex of the anchor
    auto tuple_of = [&](const Anchoring& anc) {
        std::vector<int> t(static_cast<std::size_t>(k));
        const auto& seeds = anchor_plans_[static_cast<std::size_t>(anc.edge)].seeds;
        for (int j = 0; j < k; ++j) t[anc.order[j]] = seeds[static_cast<std::size_t>(j)];
        return t;
    };
    std::vector<std::vector<int>> rep_tuples;
    for (const Anchoring& anc : all_anchorings_) {
        const auto t = tuple_of(anc);
        const bool covered = std::any_of(rep_tuples.begin(), rep_tuples.end(),
                                         [&](const auto& r) { return extends_to_automorphism(pattern_, r, t); });
        if (covered) continue;
        rep_tuples.push_back(t);
        anchorings_.push_back(anc);
    }
}

bool Embedder::creates_copy_with_anchor(const Hypergraph& h, const Vertex* sorted) const {
    auto stop = [](const Vertex*) { return true; };
    Vertex seeds[kMaxUniformity];
    const int k = pattern_.k();
    for (const Anchoring& anc : anchorings_) {
        for (int j = 0; j < k; ++j) seeds[j] = sorted[anc.order[j]];
        Search search(h, anchor_plans_[static_cast<std::size_t>(anc.edge)], stop);
        if (search.run(seeds)) return true;
    }
    return false;
}

bool Embedder::creates_copy_with_anchor(const Hypergraph& h, const Edge& e) const {
    if (static_cast<int>(e.size()) != pattern_.k() || h.k() != pattern_.k()) {
        throw std::invalid_argument("anchor edge size differs from pattern uniformity");
    }
    return creates_copy_with_anchor(h, e.vertices().data());
}

std::optional<Embedding> Embedder::find_copy_with_anchor(const Hypergraph& h, const Edge& e) const {
    std::optional<Embedding> found;
    const int v = pattern_.v();
    auto keep = [&](const Vertex* img) {
        found = Embedding{std::vector<Vertex>(img, img + v)};
        return true;
    };
    Vertex seeds[kMaxUniformity];
    for (const Anchoring& anc : all_anchorings_) {
        for (int j = 0; j < pattern_.k(); ++j) seeds[j] = e[anc.order[j]];
        Search search(h, anchor_plans_[static_cast<std::size_t>(anc.edge)], keep);
        if (search.run(seeds)) break;
    }
    return found;
}

std::size_t Embedder::count_embeddings_containing(const Hypergraph& h, const Edge& f) const {
    std::size_t count = 0;
    auto tally = [&](const Vertex*) {
        ++count;
        return false;
    };
    Vertex seeds[kMaxUniformity];
    for (const Anchoring& anc : all_anchorings_) {
        for (int j = 0; j < pattern_.k(); ++j) seeds[j] = f[anc.order[j]];
        Search search(h, anchor_plans_[static_cast<std::size_t>(anc.edge)], tally);
        search.run(seeds);
    }
    return count;
}

std::vector<CopyEdges> Embedder::copies_containing(const Hypergraph& h, const Edge& f) const {
    if (!h.contains(f)) throw std::invalid_argument("edge is not in the host");
    std::set<CopyEdges> seen;
    Embedding emb{std::vector<Vertex>(static_cast<std::size_t>(pattern_.v()))};
    auto collect = [&](const Vertex* img) {
        std::copy(img, img + pattern_.v(), emb.image.begin());
        seen.insert(copy_edges(pattern_, emb, h));
        return false;
    };
    Vertex seeds[kMaxUniformity];
    for (const Anchoring& anc : all_anchorings_) {
        for (int j = 0; j < pattern_.k(); ++j) seeds[j] = f[anc.order[j]];
        Search search(h, anchor_plans_[static_cast<std::size_t>(anc.edge)], collect);
        search.run(seeds);
    }
    return {seen.begin(), seen.end()};
}

std::optional<Embedding> Embedder::find_copy(const Hypergraph& h) const {
    std::optional<Embedding> found;
    const int v = pattern_.v();
    auto keep = [&](const Vertex* img) {
        found = Embedding{std::vector<Vertex>(img, img + v)};
        return true;
    };
    if (pattern_.h() == 0) {
        SearchPlan plan = build_search_plan(pattern_, {}, -1);
        Search search(h, plan, keep);
        search.run(nullptr);
        return found;
    }
    // Every embedding sends pattern edge 0 somewhere.
    Vertex vs[kMaxUniformity];
    Vertex seeds[kMaxUniformity];
    for (EdgeRank r : h.edge_ranks()) {
        h.unrank_into(r, vs);
        for (const Anchoring& anc : all_anchorings_) {
            if (anc.edge != 0) break;
            for (int j = 0; j < pattern_.k(); ++j) seeds[j] = vs[anc.order[j]];
            Search search(h, anchor_plans_[0], keep);
            if (search.run(seeds)) return found;
        }
    }
    return found;
}

bool Embedder::contains_copy(const Hypergraph& h) const { return find_copy(h).has_value(); }

std::vector<CopyEdges> Embedder::all_copies(const Hypergraph& h) const {
    std::set<CopyEdges> seen;
    Embedding emb{std::vector<Vertex>(static_cast<std::size_t>(pattern_.v()))};
    auto collect = [&](const Vertex* img) {
        std::copy(img, img + pattern_.v(), emb.image.begin());
        seen.insert(copy_edges(pattern_, emb, h));
        return false;
    };
    if (pattern_.h() == 0) {
        if (h.n() >= static_cast<std::uint32_t>(pattern_.v())) seen.insert({});
        return {seen.begin(), seen.end()};
    }
    Vertex vs[kMaxUniformity];
    Vertex seeds[kMaxUniformity];
    for (EdgeRank r : h.edge_ranks()) {
        h.unrank_into(r, vs);
        for (const Anchoring& anc : all_anchorings_) {
            if (anc.edge != 0) break;
            for (int j = 0; j < pattern_.k(); ++j) seeds[j] = vs[anc.order[j]];
            Search search(h, anchor_plans_[0], collect);
            search.run(seeds);
        }
    }
    return {seen.begin(), seen.end()};
}

bool creates_copy_with_anchor(const Hypergraph& h, const Pattern& p, const Edge& e) {
    return Embedder(p).creates_copy_with_anchor(h, e);
}

std::size_t count_copies_containing(const Hypergraph& h, const Pattern& p, const Edge& f) {
    return Embedder(p).count_copies_containing(h, f);
}

CopyEdges copy_edges(const Pattern& p, const Embedding& emb, const Hypergraph& host) {
    CopyEdges out;
    out.reserve(p.h());
    Vertex buf[kMaxUniformity];
    for (const Edge& e : p.edges()) {
        for (std::size_t j = 0; j < e.size(); ++j) buf[j] = emb.image[e[j]];
        sort_small(buf, p.k());
        out.push_back(host.rank_sorted(buf, p.k()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Embedding> enumerate_rooted_extensions(const Hypergraph& h, const RootedPattern& rp,
                                                   std::span<const Vertex> v_tuple, std::span<const Vertex> t_set) {
    const Pattern& base = rp.base;
    if (h.k() != base.k()) throw std::invalid_argument("host and pattern uniformity differ");
    if (v_tuple.size() != rp.root.size()) throw std::invalid_argument("root tuple must have k-1 vertices");
    std::vector<char> in_t(h.n(), 0);
    for (Vertex t : t_set) {
        if (t >= h.n()) throw std::invalid_argument("T vertex out of range");
        in_t[t] = 1;
    }
    for (std::size_t i = 0; i < v_tuple.size(); ++i) {
        if (v_tuple[i] >= h.n()) throw std::invalid_argument("root vertex out of range");
        if (in_t[v_tuple[i]]) throw std::invalid_argument("root tuple meets T");
        for (std::size_t j = 0; j < i; ++j)
            if (v_tuple[j] == v_tuple[i]) throw std::invalid_argument("root tuple repeats a vertex");
    }

    Domain domain[kMaxPatternVertices];
    std::fill(domain, domain + kMaxPatternVertices, Domain::outside);
    for (int x : rp.root_neighborhood) domain[x] = Domain::inside;

    SearchPlan plan = build_search_plan(base, rp.root, -1);
    std::vector<Embedding> out;
    auto collect = [&](const Vertex* img) {
        out.push_back(Embedding{std::vector<Vertex>(img, img + base.v())});
        return false;
    };
    Search search(h, plan, collect, domain, &in_t);
    search.run(v_tuple.data());
    std::sort(out.begin(), out.end());
    return out;
}

PackingResult max_edge_disjoint_packing(const std::vector<CopyEdges>& copies) {
    PackingResult res;
    std::vector<std::size_t> order(copies.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (copies[a].size() != copies[b].size()) return copies[a].size() < copies[b].size();
        return copies[a] < copies[b];
    });
    std::unordered_set<EdgeRank> used;
    for (std::size_t i : order) {
        const auto& c = copies[i];
        if (std::any_of(c.begin(), c.end(), [&](EdgeRank r) { return used.contains(r); })) continue;
        used.insert(c.begin(), c.end());
        res.witness.push_back(i);
    }
    res.greedy_size = res.witness.size();
    res.size = res.greedy_size;
    if (copies.size() > 20) return res;

    const std::size_t m = copies.size();
    std::vector<std::uint32_t> conflicts(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            std::vector<EdgeRank> common;
            std::set_intersection(copies[a].begin(), copies[a].end(), copies[b].begin(), copies[b].end(),
                                  std::back_inserter(common));
            if (!common.empty()) {
                conflicts[a] |= 1U << b;
                conflicts[b] |= 1U << a;
            }
        }
    }
    std::uint32_t best = 0;
    for (std::size_t i : res.witness) best |= 1U << i;
    auto search = [&](auto&& self, std::uint32_t chosen, std::uint32_t candidates) -> void {
        if (std::popcount(chosen) + std::popcount(candidates) <= std::popcount(best)) return;
        if (candidates == 0) {
            best = chosen;
            return;
        }
        const int i = std::countr_zero(candidates);
        const std::uint32_t bit = 1U << i;
        self(self, chosen | bit, candidates & ~bit & ~conflicts[static_cast<std::size_t>(i)]);
        self(self, chosen, candidates & ~bit);
    };
    search(search, 0, m == 32 ? ~0U : ((1U << m) - 1));
    res.witness.clear();
    for (std::size_t i = 0; i < m; ++i)
        if (best & (1U << i)) res.witness.push_back(i);
    res.size = res.witness.size();
    res.exact = true;
    return res;
}

}  // namespace hfree
