#include <doctest.h>

#include <set>
#include <sstream>

#include "hfree/process.hpp"
#include "hfree/random.hpp"
#include "oracles.hpp"

using namespace hfree;

namespace {

std::set<std::size_t> reachable_counts(const Pattern& p, std::uint32_t n) {
    auto order = oracle::all_k_sets(n, p.k());
    std::sort(order.begin(), order.end());
    std::set<std::size_t> out;
    do {
        out.insert(oracle::greedy(p, n, order).size());
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

std::vector<oracle::VSet> order_as_sets(const BirthOrder& bo, std::uint64_t len) {
    std::vector<oracle::VSet> out;
    for (std::uint64_t j = 0; j < len; ++j) {
        const Edge e = edge_unrank(bo.permutation[j], bo.n, bo.k);
        out.emplace_back(e.vertices().begin(), e.vertices().end());
    }
    return out;
}

}  // namespace

TEST_CASE("exhaustive orderings for the triangle process") {
    const Pattern tri = make_clique(3, 2);
    CHECK(reachable_counts(tri, 3) == std::set<std::size_t>{2});
    CHECK(reachable_counts(tri, 4) == std::set<std::size_t>{3, 4});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CHECK(run_process(3, tri, seed).accepted == 2);
        const auto acc = run_process(4, tri, seed).accepted;
        CHECK((acc == 3 || acc == 4));
    }
}

TEST_CASE("a single possible edge is always accepted") {
    CHECK(run_process(3, make_clique(4, 3), 1).accepted == 1);
    CHECK(run_process(2, make_clique(3, 2), 9).accepted == 1);
}

TEST_CASE("process equals a brute-force greedy over the same birth order") {
    const std::vector<Pattern> pats{make_clique(3, 2), make_clique(4, 2), make_ell_cycle(1, 4, 2), make_clique(4, 3),
                                    make_diamond()};
    for (const auto& p : pats)
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const std::uint32_t n = p.k() == 2 ? 7 : 6;
            const BirthOrder bo = make_birth_order(seed, n, p.k());
            const auto res = run_process(bo, Embedder(p), 1.0);
            CHECK(oracle::edge_set(res.final_graph) == oracle::greedy(p, n, order_as_sets(bo, bo.size())));
            CHECK(res.accepted == res.final_graph.edge_count());
            CHECK(res.examined == bo.size());
        }
}

TEST_CASE("birth order is a seeded bijection") {
    const BirthOrder a = make_birth_order(42, 12, 3);
    const BirthOrder b = make_birth_order(42, 12, 3);
    const BirthOrder c = make_birth_order(43, 12, 3);
    CHECK(a.permutation == b.permutation);
    CHECK(a.permutation != c.permutation);
    auto sorted = a.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);
    CHECK(a.prefix_length(1.0) == 220);
    CHECK(a.prefix_length(0.5) == 110);
    CHECK(a.prefix_length(0.0) == 0);
    CHECK(a.birthtime(219) == 1.0);
}

TEST_CASE("SplitMix64 reference values") {
    // first outputs for seed 1234567, from the published reference generator
    SplitMix64 g(1234567);
    CHECK(g.next() == 6457827717110365317ULL);
    CHECK(g.next() == 3203168211198807973ULL);
    CHECK(g.next() == 9817491932198370423ULL);
    SplitMix64 r(5);
    for (int i = 0; i < 1000; ++i) REQUIRE(r.below(7) < 7);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("final graphs are pattern-free and maximal") {
    const std::vector<Pattern> pats{make_clique(3, 2), make_clique(4, 3), make_ell_cycle(1, 3, 3), make_diamond()};
    for (const auto& p : pats)
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto res = run_process(12, p, seed);
            CHECK(verify_f_free(res.final_graph, p));
            CHECK(verify_maximal(res.final_graph, p, 12));
            const auto part = run_process(12, p, seed, ProcessOptions{0.01});
            CHECK(verify_f_free(part.final_graph, p));
        }
    CHECK_FALSE(verify_maximal(Hypergraph(5, 2), make_clique(3, 2), 5));
    CHECK(verify_maximal(Hypergraph(2, 2), make_clique(3, 2), 2) == false);
}

TEST_CASE("monotone coupling of stopping times") {
    const Pattern p = make_clique(4, 3);
    const BirthOrder bo = make_birth_order(77, 14, 3);
    const Embedder emb(p);
    const double stops[] = {0.05, 0.1, 0.3, 0.6, 1.0};
    oracle::EdgeSet prev;
    for (double s : stops) {
        const auto cur = oracle::edge_set(run_process(bo, emb, s).final_graph);
        CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
    }
}

TEST_CASE("runs are deterministic down to trajectory bytes") {
    const Pattern p = make_clique(3, 2);
    const auto a = run_process(60, p, 5, ProcessOptions{0.7});
    const auto b = run_process(60, p, 5, ProcessOptions{0.7});
    CHECK(a.final_graph == b.final_graph);
    std::ostringstream ta, tb;
    write_trajectory_csv(ta, a.trajectory);
    write_trajectory_csv(tb, b.trajectory);
    CHECK(ta.str() == tb.str());
    CHECK(ta.str().rfind("steps_examined,accepted,max_codegree\n", 0) == 0);
    for (std::size_t i = 1; i < a.trajectory.size(); ++i) {
        CHECK(a.trajectory[i - 1].accepted <= a.trajectory[i].accepted);
        CHECK(a.trajectory[i - 1].steps_examined < a.trajectory[i].steps_examined);
    }
    CHECK(a.trajectory.back().accepted == a.accepted);
    CHECK(a.max_codegree == a.final_graph.max_i_degree(1));
}

TEST_CASE("checkpoint schedule") {
    CHECK(checkpoint_schedule(10, 10) == std::vector<std::uint64_t>{1, 2, 3, 5, 10});
    CHECK(checkpoint_schedule(10, 4) == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(checkpoint_schedule(10, 0) == std::vector<std::uint64_t>{0});
}

TEST_CASE("errors") {
    const Pattern p = make_clique(3, 2);
    CHECK_THROWS_AS(run_process(10, p, 1, ProcessOptions{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(run_process(10, p, 1, ProcessOptions{1.5}), std::invalid_argument);
    try {
        run_process(100000, make_clique(4, 3), 1);
        FAIL("expected the memory guard");
    } catch (const MemoryBudgetExceeded& e) {
        CHECK(std::string(e.what()).find("C(n,k)=166661666700000") != std::string::npos);
    }
    CHECK_THROWS_AS(run_process(300, p, 1, ProcessOptions{1.0, 1000}), MemoryBudgetExceeded);
}
