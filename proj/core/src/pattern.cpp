#include "hfree/pattern.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hfree {

std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::uint32_t mask_of(const Edge& e) {
    std::uint32_t m = 0;
    for (Vertex x : e.vertices()) m |= 1U << x;
    return m;
}

// Calls fn(mask) for every r-subset of {0..v-1}, in lexicographic order of the
// sorted tuples.
template <typename Fn>
void for_each_subset_lex(int v, int r, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (r > v) return;
    while (true) {
        std::uint32_t m = 0;
        for (int x : idx) m |= 1U << x;
        if (fn(m, idx)) return;
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == v - r + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

Pattern::Pattern(int k, int v, std::vector<Edge> edges, std::string name)
    : k_(k), v_(v), edges_(std::move(edges)), name_(std::move(name)) {
    if (k < 2 || k > kMaxUniformity) reject("pattern uniformity must be in [2, " + std::to_string(kMaxUniformity) + "]");
    if (v < k + 1) reject("pattern needs at least k+1 vertices");
    if (v > kMaxPatternVertices) reject("pattern has more than " + std::to_string(kMaxPatternVertices) + " vertices");
    for (const Edge& e : edges_) {
        if (static_cast<int>(e.size()) != k) reject("pattern edge size differs from k");
        if (e[e.size() - 1] >= static_cast<Vertex>(v)) reject("pattern edge vertex out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) reject("pattern has a duplicate edge");
    masks_.reserve(edges_.size());
    for (const Edge& e : edges_) masks_.push_back(mask_of(e));
}

std::vector<int> Pattern::isolated_vertices() const {
    std::uint32_t covered = 0;
    for (auto m : masks_) covered |= m;
    std::vector<int> out;
    for (int x = 0; x < v_; ++x)
        if (!(covered & (1U << x))) out.push_back(x);
    return out;
}

int Pattern::degree_of(std::uint32_t subset_mask) const {
    int d = 0;
    for (auto m : masks_)
        if ((subset_mask & ~m) == 0) ++d;
    return d;
}

int Pattern::max_codegree() const {
    std::map<std::uint32_t, int> counts;
    int best = 0;
    for (auto m : masks_) {
        for (std::uint32_t rest = m; rest; rest &= rest - 1) {
            const std::uint32_t sub = m & ~(rest & (~rest + 1));
            best = std::max(best, ++counts[sub]);
        }
    }
    return best;
}

Pattern Pattern::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != v_) reject("relabeling must cover every pattern vertex");
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) {
        std::vector<Vertex> vs;
        for (Vertex x : e.vertices()) vs.push_back(static_cast<Vertex>(perm.at(x)));
        out.emplace_back(std::move(vs));
    }
    return Pattern(k_, v_, std::move(out), name_);
}

Hypergraph Pattern::as_hypergraph() const {
    Hypergraph g(static_cast<std::uint32_t>(v_), k_);
    for (const Edge& e : edges_) g.add_edge(e);
    return g;
}

Pattern make_clique(int v, int k) {
    if (k < 2) reject("clique: k must be >= 2");
    if (v < k + 1) reject("clique: v must be >= k+1");
    std::vector<Edge> edges;
    for_each_subset_lex(v, k, [&](std::uint32_t, const std::vector<int>& idx) {
        edges.emplace_back(std::vector<Vertex>(idx.begin(), idx.end()));
        return false;
    });
    return Pattern(k, v, std::move(edges), "clique-" + std::to_string(v) + "-" + std::to_string(k));
}

Pattern make_ell_cycle(int ell, int h, int k) {
    if (k < 2) reject("cycle: k must be >= 2");
    if (ell < 1 || ell >= k) reject("cycle: need 1 <= l < k");
    const int v = h * (k - ell);
    if (h < 1 || v < k + 1) reject("cycle: need h(k-l) >= k+1");
    // wrap-around must not make consecutive edges share more than l vertices
    if (h < 3 || 2 * k - ell > v) reject("cycle: need h >= 3 and 2k-l <= h(k-l) so consecutive edges meet in exactly l");
    std::vector<Edge> edges;
    for (int i = 0; i < h; ++i) {
        std::vector<Vertex> vs;
        for (int j = 0; j < k; ++j) vs.push_back(static_cast<Vertex>((i * (k - ell) + j) % v));
        edges.emplace_back(std::move(vs));
    }
    return Pattern(k, v, std::move(edges),
                   "cycle-" + std::to_string(ell) + "-" + std::to_string(h) + "-" + std::to_string(k));
}

Pattern make_complete_multipartite(int part_size, int parts, int k) {
    if (k < 2) reject("multipartite: k must be >= 2");
    if (part_size < 1) reject("multipartite: part size must be >= 1");
    if (parts < k) reject("multipartite: need l >= k parts");
    const int v = part_size * parts;
    if (v < k + 1) reject("multipartite: need r*l >= k+1");
    if (v > kMaxPatternVertices) reject("multipartite: r*l exceeds the pattern vertex cap");
    std::vector<Edge> edges;
    for_each_subset_lex(v, k, [&](std::uint32_t, const std::vector<int>& idx) {
        std::uint32_t seen = 0;
        for (int x : idx) {
            const std::uint32_t bit = 1U << (x / part_size);
            if (seen & bit) return false;
            seen |= bit;
        }
        edges.emplace_back(std::vector<Vertex>(idx.begin(), idx.end()));
        return false;
    });
    return Pattern(k, v, std::move(edges),
                   "multipartite-" + std::to_string(part_size) + "-" + std::to_string(parts) + "-" + std::to_string(k));
}

Pattern make_diamond() {
    return Pattern(2, 4, {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{1, 2}, Edge{1, 3}}, "diamond");
}

Pattern make_disjoint_edges() { return Pattern(2, 4, {Edge{0, 1}, Edge{2, 3}}, "disjoint-edges"); }

Pattern read_pattern(std::istream& is, std::string name) {
    std::string line;
    if (!std::getline(is, line)) reject("pattern file: missing header line");
    std::istringstream header(line);
    int k = 0, v = 0;
    if (!(header >> k >> v)) reject("pattern file: header must be \"k v\"");
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<Vertex> vs;
        long long x;
        while (row >> x) {
            if (x < 0 || x >= v) reject("pattern file: vertex out of range");
            vs.push_back(static_cast<Vertex>(x));
        }
        if (!row.eof()) reject("pattern file: bad token");
        edges.emplace_back(std::move(vs));
    }
    return Pattern(k, v, std::move(edges), std::move(name));
}

void write_pattern(std::ostream& os, const Pattern& p) {
    os << p.k() << ' ' << p.v() << '\n';
    for (const Edge& e : p.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << '\n';
    }
}

Pattern load_pattern(const std::string& source) {
    constexpr std::string_view prefix = "builtin:";
    if (source.rfind(prefix, 0) != 0) {
        std::ifstream in(source);
        if (!in) reject("cannot open pattern file '" + source + "'");
        std::string stem = source.substr(source.find_last_of('/') + 1);
        stem = stem.substr(0, stem.find('.'));
        return read_pattern(in, stem);
    }
    const std::string name = source.substr(prefix.size());
    if (name == "triangle") return make_clique(3, 2);
    if (name == "diamond") return make_diamond();
    if (name == "disjoint-edges") return make_disjoint_edges();

    std::vector<std::string> parts;
    std::stringstream ss(name);
    for (std::string tok; std::getline(ss, tok, '-');) parts.push_back(tok);
    std::vector<int> args;
    try {
        for (std::size_t i = 1; i < parts.size(); ++i) args.push_back(std::stoi(parts[i]));
    } catch (const std::exception&) {
        reject("bad builtin pattern '" + name + "'");
    }
    if (parts.size() == 3 && parts[0] == "clique") return make_clique(args[0], args[1]);
    if (parts.size() == 4 && parts[0] == "cycle") return make_ell_cycle(args[0], args[1], args[2]);
    if (parts.size() == 4 && parts[0] == "multipartite") return make_complete_multipartite(args[0], args[1], args[2]);
    reject("unknown builtin pattern '" + name + "'");
}

PatternProfile analyze(const Pattern& p) {
    const int v = p.v(), k = p.k(), h = static_cast<int>(p.h());
    if (h <= 1) reject("pattern needs at least two edges for its k-density to be defined");

    // edges_within[S] = number of edges contained in S (subset-sum transform).
    const std::uint32_t full = 1U << v;
    std::vector<int> edges_within(full, 0);
    for (auto m : p.edge_masks()) ++edges_within[m];
    for (int bit = 0; bit < v; ++bit)
        for (std::uint32_t s = 0; s < full; ++s)
            if (s & (1U << bit)) edges_within[s] += edges_within[s ^ (1U << bit)];

    PatternProfile prof;
    prof.v = v;
    prof.h = h;
    prof.k = k;
    prof.k_density = Rational(h - 1, v - k);
    prof.h_table.assign(static_cast<std::size_t>(v - k), 0);
    for (std::uint32_t s = 0; s < full; ++s) {
        const int i = std::popcount(s);
        if (i >= k + 1 && i < v) {
            auto& slot = prof.h_table[static_cast<std::size_t>(i - k - 1)];
            slot = std::max(slot, edges_within[s]);
        }
    }
    prof.h_table.back() = h - 1;

    prof.strictly_balanced = true;
    for (int i = k + 1; i < v; ++i) {
        if (Rational(prof.h_at(i) - 1, i - k) >= prof.k_density) prof.strictly_balanced = false;
    }
    const Rational slope(v - k, h - 1);
    for (int i = k + 1; i <= v; ++i) prof.delta_table.push_back(Rational(i - k) - Rational(prof.h_at(i) - 1) * slope);
    prof.delta = *std::min_element(prof.delta_table.begin(), prof.delta_table.end());
    prof.codeg = p.max_codegree();
    prof.theorem_applicable = prof.strictly_balanced && h >= v - k + 1 && prof.codeg >= 2;
    prof.exponents = predicted_exponents(prof);
    return prof;
}

ExponentSet predicted_exponents(const PatternProfile& profile) {
    const int h = profile.h, v = profile.v, k = profile.k, d = profile.codeg;
    if (h <= 1) reject("exponents undefined for patterns with fewer than two edges");
    ExponentSet ex;
    const Rational slope(v - k, h - 1);
    ex.codegree_upper = Rational(1) - slope;
    ex.edges_upper = Rational(k) - slope;
    if (d >= 2) ex.log_upper = Rational(3, d - 1) - Rational(1, h - 1);
    ex.edges_lower = Rational(k) - slope;
    ex.log_lower = Rational(1, h - 1);
    ex.applicable = profile.theorem_applicable;
    return ex;
}

void print_profile(std::ostream& os, const Pattern& p, const PatternProfile& prof) {
    os << "pattern            " << (p.name().empty() ? "(unnamed)" : p.name()) << '\n'
       << "k, v, h            " << prof.k << ", " << prof.v << ", " << prof.h << '\n'
       << "k-density          " << to_string(prof.k_density) << '\n'
       << "max co-degree d    " << prof.codeg << '\n'
       << "strictly balanced  " << (prof.strictly_balanced ? "yes" : "no") << '\n'
       << "theorem applies    " << (prof.theorem_applicable ? "yes" : "no") << '\n'
       << "\n   i   h_i   delta_i\n";
    for (int i = prof.k + 1; i <= prof.v; ++i) {
        std::string hi = std::to_string(prof.h_at(i));
        std::string idx = std::to_string(i);
        os << std::string(4 - std::min<std::size_t>(4, idx.size()), ' ') << idx
           << std::string(6 - std::min<std::size_t>(6, hi.size()), ' ') << hi << "   " << to_string(prof.delta_at(i))
           << '\n';
    }
    const auto& ex = prof.exponents;
    os << "\ndelta              " << to_string(prof.delta) << '\n'
       << "edges exponent     " << to_string(ex.edges_upper) << "  (upper log power "
       << (ex.log_upper ? to_string(*ex.log_upper) : std::string("undefined")) << ", lower log power "
       << to_string(ex.log_lower) << ")\n"
       << "co-degree exponent " << to_string(ex.codegree_upper) << '\n';
    for (int x : p.isolated_vertices()) os << "warning: vertex " << x << " is isolated\n";
}

std::string profile_record(const Pattern& p, const PatternProfile& prof) {
    std::ostringstream os;
    os << "pattern=" << (p.name().empty() ? "unnamed" : p.name()) << " k=" << prof.k << " v=" << prof.v
       << " h=" << prof.h << " k_density=" << to_string(prof.k_density) << " codeg=" << prof.codeg
       << " strictly_balanced=" << (prof.strictly_balanced ? "true" : "false")
       << " theorem_applicable=" << (prof.theorem_applicable ? "true" : "false");
    for (int i = prof.k + 1; i <= prof.v; ++i) os << " h_" << i << '=' << prof.h_at(i);
    for (int i = prof.k + 1; i <= prof.v; ++i) os << " delta_" << i << '=' << to_string(prof.delta_at(i));
    const auto& ex = prof.exponents;
    os << " delta=" << to_string(prof.delta) << " edges_upper=" << to_string(ex.edges_upper)
       << " codegree_upper=" << to_string(ex.codegree_upper)
       << " log_upper=" << (ex.log_upper ? to_string(*ex.log_upper) : std::string("undefined"))
       << " edges_lower=" << to_string(ex.edges_lower) << " log_lower=" << to_string(ex.log_lower);
    return os.str();
}

RootedPattern select_root(const Pattern& p) {
    const int d = p.max_codegree();
    if (d < 1) reject("rooting needs a (k-1)-set of positive degree");
    std::uint32_t root_mask = 0;
    std::vector<int> root;
    for_each_subset_lex(p.v(), p.k() - 1, [&](std::uint32_t m, const std::vector<int>& idx) {
        if (p.degree_of(m) != d) return false;
        root_mask = m;
        root = idx;
        return true;
    });

    std::vector<Edge> kept;
    std::uint32_t nbr_mask = 0;
    for (std::size_t i = 0; i < p.h(); ++i) {
        const auto m = p.edge_masks()[i];
        if ((root_mask & ~m) == 0) nbr_mask |= m & ~root_mask;
        else kept.push_back(p.edges()[i]);
    }
    std::vector<int> nbrs;
    for (int x = 0; x < p.v(); ++x)
        if (nbr_mask & (1U << x)) nbrs.push_back(x);
    return RootedPattern{Pattern(p.k(), p.v(), std::move(kept), p.name() + "-hat"), std::move(root), std::move(nbrs), d};
}

}  // namespace hfree
