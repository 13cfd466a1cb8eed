#include "hfree/hypergraph.hpp"
#include "hfree/random.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hfree {

namespace {

// Above these sizes the membership bitset / co-degree array would be mostly
// empty, so we fall back to hash containers.
constexpr std::uint64_t kDenseEdgeLimit = std::uint64_t{1} << 30;
constexpr std::uint64_t kDenseIndexLimit = std::uint64_t{1} << 22;

constexpr std::uint64_t kRankLimit = std::uint64_t{1} << 63;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return (a > std::numeric_limits<std::uint64_t>::max() - b)
               ? std::numeric_limits<std::uint64_t>::max()
               : a + b;
}

void erase_from_back(std::vector<Vertex>& list, Vertex x) {
    auto it = std::find(list.rbegin(), list.rend(), x);
    list.erase(std::next(it).base());
}

void erase_from_back(std::vector<EdgeRank>& list, EdgeRank x) {
    auto it = std::find(list.rbegin(), list.rend(), x);
    list.erase(std::next(it).base());
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    uint128 result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        result = result * (n - r + i) / i;
        if (result >= kRankLimit) throw std::overflow_error("binomial coefficient exceeds 2^63");
    }
    return static_cast<std::uint64_t>(result);
}

BinomialTable::BinomialTable(std::uint32_t n, int k)
    : table_((static_cast<std::size_t>(n) + 1) * static_cast<std::size_t>(k + 1), 0),
      stride_(static_cast<std::size_t>(k) + 1) {
    for (std::uint32_t i = 0; i <= n; ++i) {
        table_[i * stride_] = 1;
        for (int j = 1; j <= k; ++j) {
            table_[i * stride_ + j] =
                (i == 0) ? 0 : saturating_add(table_[(i - 1) * stride_ + j - 1], table_[(i - 1) * stride_ + j]);
        }
    }
}

Edge::Edge(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
        throw std::invalid_argument("edge has a repeated vertex");
    }
}

bool Edge::contains(Vertex x) const { return std::binary_search(vertices_.begin(), vertices_.end(), x); }

std::ostream& operator<<(std::ostream& os, const Edge& e) {
    os << '{';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    return os << '}';
}

EdgeRank edge_rank(std::span<const Vertex> vs, std::uint32_t n) {
    EdgeRank r = 0;
    for (std::size_t j = 0; j < vs.size(); ++j) {
        if (vs[j] >= n) throw std::invalid_argument("edge vertex out of range");
        if (j > 0 && vs[j] <= vs[j - 1]) throw std::invalid_argument("edge vertices not strictly increasing");
        r += binomial(vs[j], j + 1);
    }
    return r;
}

Edge edge_unrank(EdgeRank rank, std::uint32_t n, int k) {
    if (k < 1 || k > kMaxUniformity) throw std::invalid_argument("uniformity out of range");
    if (rank >= binomial(n, static_cast<std::uint64_t>(k))) throw std::invalid_argument("rank out of range");
    std::vector<Vertex> out(static_cast<std::size_t>(k));
    Vertex hi = n;  // exclusive bound for the current vertex
    for (int j = k; j >= 1; --j) {
        // largest v < hi with C(v, j) <= rank
        Vertex lo = static_cast<Vertex>(j - 1), top = hi - 1;
        while (lo < top) {
            Vertex mid = lo + (top - lo + 1) / 2;
            if (binomial(mid, static_cast<std::uint64_t>(j)) <= rank) lo = mid;
            else top = mid - 1;
        }
        out[static_cast<std::size_t>(j - 1)] = lo;
        rank -= binomial(lo, static_cast<std::uint64_t>(j));
        hi = lo;
    }
    return Edge(std::move(out));
}

Hypergraph::Hypergraph(std::uint32_t n, int k) : n_(n), k_(k) {
    if (k < 1 || k > kMaxUniformity) {
        throw std::invalid_argument("uniformity must be in [1, " + std::to_string(kMaxUniformity) + "]");
    }
    total_edges_ = binomial(n, static_cast<std::uint64_t>(k));
    binom_ = BinomialTable(n, k);
    dense_edges_ = total_edges_ <= kDenseEdgeLimit;
    if (dense_edges_) edge_bits_.assign((total_edges_ + 63) / 64, 0);
    const std::uint64_t subsets = binomial(n, static_cast<std::uint64_t>(k - 1));
    dense_index_ = subsets <= kDenseIndexLimit;
    if (dense_index_) codegree_dense_.resize(subsets);
    incidence_.resize(n);
}

void Hypergraph::validate(const Edge& e) const {
    if (static_cast<int>(e.size()) != k_) throw std::invalid_argument("edge size differs from uniformity");
    if (e.size() > 0 && e[e.size() - 1] >= n_) throw std::invalid_argument("edge vertex out of range");
}

bool Hypergraph::contains_rank(EdgeRank r) const {
    if (dense_edges_) return (edge_bits_[r >> 6] >> (r & 63)) & 1U;
    return edge_hash_.contains(r);
}

bool Hypergraph::contains(const Edge& e) const {
    if (static_cast<int>(e.size()) != k_ || (e.size() > 0 && e[e.size() - 1] >= n_)) return false;
    return contains_rank(rank_sorted(e.vertices().data(), k_));
}

std::vector<Vertex>& Hypergraph::codegree_list(EdgeRank sub_rank) {
    if (dense_index_) return codegree_dense_[sub_rank];
    return codegree_sparse_[sub_rank];
}

const std::vector<Vertex>* Hypergraph::find_codegree_list(EdgeRank sub_rank) const {
    if (dense_index_) return &codegree_dense_[sub_rank];
    auto it = codegree_sparse_.find(sub_rank);
    return it == codegree_sparse_.end() ? nullptr : &it->second;
}

void Hypergraph::add_edge(const Edge& e) {
    validate(e);
    if (!add_sorted(e.vertices().data())) throw std::invalid_argument("duplicate edge");
}

void Hypergraph::remove_edge(const Edge& e) {
    validate(e);
    if (!remove_sorted(e.vertices().data())) throw std::invalid_argument("edge not present");
}

bool Hypergraph::add_sorted(const Vertex* vs) {
    const EdgeRank r = rank_sorted(vs, k_);
    if (contains_rank(r)) return false;
    if (dense_edges_) edge_bits_[r >> 6] |= std::uint64_t{1} << (r & 63);
    else edge_hash_.insert(r);

    Vertex sub[kMaxUniformity];
    for (int skip = 0; skip < k_; ++skip) {
        int m = 0;
        for (int j = 0; j < k_; ++j)
            if (j != skip) sub[m++] = vs[j];
        codegree_list(rank_sorted(sub, k_ - 1)).push_back(vs[skip]);
        incidence_[vs[skip]].push_back(r);
    }
    ++edge_count_;
    return true;
}

bool Hypergraph::remove_sorted(const Vertex* vs) {
    const EdgeRank r = rank_sorted(vs, k_);
    if (!contains_rank(r)) return false;
    if (dense_edges_) edge_bits_[r >> 6] &= ~(std::uint64_t{1} << (r & 63));
    else edge_hash_.erase(r);

    Vertex sub[kMaxUniformity];
    for (int skip = 0; skip < k_; ++skip) {
        int m = 0;
        for (int j = 0; j < k_; ++j)
            if (j != skip) sub[m++] = vs[j];
        const EdgeRank sr = rank_sorted(sub, k_ - 1);
        auto& list = codegree_list(sr);
        erase_from_back(list, vs[skip]);
        if (!dense_index_ && list.empty()) codegree_sparse_.erase(sr);
        erase_from_back(incidence_[vs[skip]], r);
    }
    --edge_count_;
    return true;
}

std::span<const Vertex> Hypergraph::neighbor_view(const Vertex* sorted_u) const {
    const auto* list = find_codegree_list(rank_sorted(sorted_u, k_ - 1));
    if (list == nullptr) return {};
    return *list;
}

std::vector<Vertex> Hypergraph::neighbors_of(std::span<const Vertex> u) const {
    if (static_cast<int>(u.size()) != k_ - 1) throw std::invalid_argument("neighbor query needs a (k-1)-set");
    std::vector<Vertex> sorted(u.begin(), u.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("neighbor query set has a repeated vertex");
    if (!sorted.empty() && sorted.back() >= n_) throw std::invalid_argument("neighbor query vertex out of range");
    auto view = neighbor_view(sorted.data());
    std::vector<Vertex> out(view.begin(), view.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Hypergraph::codegree(std::span<const Vertex> u) const { return neighbors_of(u).size(); }

std::size_t Hypergraph::max_i_degree(int i) const {
    if (i < 1 || i > k_) throw std::invalid_argument("degree order must be in [1, k]");
    if (edge_count_ == 0) return 0;
    if (i == k_) return 1;
    std::size_t best = 0;
    if (i == k_ - 1) {
        if (dense_index_) {
            for (const auto& list : codegree_dense_) best = std::max(best, list.size());
        } else {
            for (const auto& [key, list] : codegree_sparse_) best = std::max(best, list.size());
        }
        return best;
    }
    // Direct count over the i-subsets of every edge.
    std::unordered_map<EdgeRank, std::size_t> counts;
    Vertex vs[kMaxUniformity];
    Vertex sub[kMaxUniformity];
    for (EdgeRank r : edge_ranks()) {
        unrank_into(r, vs);
        std::uint32_t mask = (1U << i) - 1;
        const std::uint32_t limit = 1U << k_;
        while (mask < limit) {
            int m = 0;
            for (int j = 0; j < k_; ++j)
                if (mask & (1U << j)) sub[m++] = vs[j];
            best = std::max(best, ++counts[rank_sorted(sub, i)]);
            // next subset with the same popcount (Gosper's hack)
            const std::uint32_t c = mask & (~mask + 1);
            const std::uint32_t rr = mask + c;
            mask = (((rr ^ mask) >> 2) / c) | rr;
        }
    }
    return best;
}

void Hypergraph::unrank_into(EdgeRank rank, Vertex* out) const {
    Vertex hi = n_;
    for (int j = k_; j >= 1; --j) {
        Vertex lo = static_cast<Vertex>(j - 1), top = hi - 1;
        while (lo < top) {
            Vertex mid = lo + (top - lo + 1) / 2;
            if (binom_(mid, j) <= rank) lo = mid;
            else top = mid - 1;
        }
        out[j - 1] = lo;
        rank -= binom_(lo, j);
        hi = lo;
    }
}

std::vector<EdgeRank> Hypergraph::edge_ranks() const {
    std::vector<EdgeRank> out;
    out.reserve(edge_count_);
    Vertex vs[kMaxUniformity];
    for (Vertex v = 0; v < n_; ++v) {
        for (EdgeRank r : incidence_[v]) {
            unrank_into(r, vs);
            if (vs[0] == v) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> Hypergraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    Vertex vs[kMaxUniformity];
    for (EdgeRank r : edge_ranks()) {
        unrank_into(r, vs);
        out.emplace_back(std::vector<Vertex>(vs, vs + k_));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edge_count_ == b.edge_count_ && a.edge_ranks() == b.edge_ranks();
}

void write_hypergraph(std::ostream& os, const Hypergraph& h) {
    os << h.n() << ' ' << h.k() << '\n';
    for (const Edge& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << '\n';
    }
}

Hypergraph read_hypergraph(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("hypergraph file: missing header line");
    std::istringstream header(line);
    long long n = -1, k = -1;
    if (!(header >> n >> k) || n < 0 || k < 1) throw std::invalid_argument("hypergraph file: header must be \"n k\"");
    Hypergraph h(static_cast<std::uint32_t>(n), static_cast<int>(k));
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<Vertex> vs;
        long long x;
        while (row >> x) {
            if (x < 0 || x >= n) {
                throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) + ": vertex out of range");
            }
            vs.push_back(static_cast<Vertex>(x));
        }
        if (!row.eof()) throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) + ": bad token");
        if (static_cast<long long>(vs.size()) != k) {
            throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(k) + " vertices");
        }
        if (!std::is_sorted(vs.begin(), vs.end())) {
            throw std::invalid_argument("hypergraph file line " + std::to_string(lineno) + ": vertices not ascending");
        }
        h.add_edge(Edge(std::move(vs)));
    }
    return h;
}

std::string to_text(const Hypergraph& h) {
    std::ostringstream os;
    write_hypergraph(os, h);
    return os.str();
}

Hypergraph from_text(const std::string& text) {
    std::istringstream is(text);
    return read_hypergraph(is);
}

}  // namespace hfree
