#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hfree/harness.hpp"
#include "hfree/random.hpp"

using namespace hfree;

namespace {

std::vector<SweepRecord> synthetic(const std::vector<std::uint32_t>& ns, double (*f)(double)) {
    std::vector<SweepRecord> out;
    std::uint64_t seed = 0;
    for (auto n : ns) {
        const auto y = static_cast<std::uint64_t>(std::llround(f(static_cast<double>(n))));
        out.push_back({"synthetic", n, seed++, y, y, 0});
    }
    return out;
}

const std::vector<std::uint32_t> kDoubling{128, 256, 512, 1024, 2048};

std::string csv(const std::vector<SweepRecord>& r) {
    std::ostringstream os;
    write_sweep_csv(os, r);
    return os.str();
}

}  // namespace

TEST_CASE("sweep basics") {
    const Pattern tri = make_clique(3, 2);
    SweepOptions opt;
    opt.n_list = {3};
    opt.trials = 1;
    const auto one = sweep(tri, opt);
    REQUIRE(one.records.size() == 1);
    CHECK(one.records[0].accepted_edges == 2);
    CHECK(one.records[0].pattern == "clique-3-2");
    CHECK(one.records[0].seed == derive_seed(0, 0));

    opt.trials = 0;
    CHECK(sweep(tri, opt).records.empty());
    CHECK(csv({}) == "pattern,n,seed,accepted_edges,max_codegree,runtime_ms\n");
}

TEST_CASE("sweep output is deterministic and independent of thread count") {
    const Pattern tri = make_clique(3, 2);
    SweepOptions opt;
    opt.n_list = {40, 20, 30};
    opt.trials = 4;
    opt.base_seed = 17;
    opt.threads = 1;
    const auto a = sweep(tri, opt);
    opt.threads = 3;
    const auto b = sweep(tri, opt);
    CHECK(csv(a.records) == csv(b.records));
    REQUIRE(a.records.size() == 12);
    for (std::size_t i = 1; i < a.records.size(); ++i) {
        const auto& x = a.records[i - 1];
        const auto& y = a.records[i];
        CHECK(std::tie(x.n, x.seed) < std::tie(y.n, y.seed));
    }
    for (const auto& r : a.records) {
        CHECK(r.accepted_edges <= r.n * (r.n - 1) / 2);
        CHECK(r.max_codegree <= r.n - 1);
        CHECK(r.runtime_ms == 0);
        const auto direct = run_process(r.n, tri, r.seed);
        CHECK(direct.accepted == r.accepted_edges);
    }
}

TEST_CASE("sweep guards memory before running") {
    SweepOptions opt;
    opt.n_list = {10, 5000};
    opt.trials = 1;
    opt.memory_budget = 1 << 20;
    CHECK_THROWS_AS(sweep(make_clique(4, 3), opt), MemoryBudgetExceeded);
}

TEST_CASE("CSV round trip") {
    const std::vector<SweepRecord> recs{{"clique-3-2", 128, 99, 2000, 40, 12}, {"clique-3-2", 256, 5, 6000, 60, 0}};
    std::istringstream in(csv(recs));
    CHECK(read_sweep_csv(in) == recs);
    std::istringstream bad("pattern,n\n");
    CHECK_THROWS(read_sweep_csv(bad));
    std::istringstream short_row("pattern,n,seed,accepted_edges,max_codegree,runtime_ms\nx,1,2\n");
    CHECK_THROWS(read_sweep_csv(short_row));
}

TEST_CASE("fits on exact power laws") {
    const auto pure = fit(synthetic(kDoubling, [](double n) { return std::pow(n, 1.5); }), Quantity::edges);
    CHECK(pure.slope == doctest::Approx(1.5).epsilon(0.005 / 1.5));
    CHECK(std::abs(pure.slope - 1.50003113) < 1e-6);

    const auto quad = fit(synthetic({4, 9, 17, 30}, [](double n) { return 7 * n * n; }), Quantity::codegree);
    CHECK(quad.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quad.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK(quad.r_squared == doctest::Approx(1.0));
    CHECK(quad.quantity == Quantity::codegree);
}

TEST_CASE("log factor biases the slope upward") {
    const auto biased =
        fit(synthetic(kDoubling, [](double n) { return std::pow(n, 1.5) * std::sqrt(std::log(n)); }),
            Quantity::edges, Rational(3, 2));
    CHECK(std::abs(biased.slope - 1.58130079) < 1e-6);
    CHECK(biased.deviation == doctest::Approx(biased.slope - 1.5));
    CHECK(*biased.predicted_slope == Rational(3, 2));

    const auto two = fit_two_term(synthetic(kDoubling, [](double n) { return std::pow(n, 1.5) * std::sqrt(std::log(n)); }),
                                  Quantity::edges);
    CHECK(two.a == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(two.b == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("fit invariances") {
    std::mt19937_64 rng(8);
    std::vector<SweepRecord> recs;
    for (std::uint32_t n : {50, 70, 90, 130})
        for (int t = 0; t < 5; ++t)
            recs.push_back({"p", n, rng(), 1000 + rng() % 90000, 1 + rng() % 300, 0});
    const auto base = fit(recs, Quantity::edges);
    CHECK(base.r_squared >= 0.0);
    CHECK(base.r_squared <= 1.0);
    CHECK(base.n_values == std::vector<std::uint32_t>{50, 70, 90, 130});
    CHECK(base.trials_per_n == std::vector<std::size_t>{5, 5, 5, 5});
    for (int rep = 0; rep < 10; ++rep) {
        std::shuffle(recs.begin(), recs.end(), rng);
        for (auto& r : recs) r.pattern = "relabeled";
        const auto other = fit(recs, Quantity::edges);
        CHECK(other.slope == base.slope);
        CHECK(other.intercept == base.intercept);
        CHECK(other.r_squared == base.r_squared);
    }
    auto scaled = recs;
    for (auto& r : scaled) r.accepted_edges *= 8;
    const auto s = fit(scaled, Quantity::edges);
    CHECK(std::abs(s.slope - base.slope) < 1e-9);
    CHECK(std::abs(s.intercept - base.intercept - std::log(8.0)) < 1e-9);

    const auto med = fit(recs, Quantity::edges, std::nullopt, Aggregate::median);
    CHECK(std::isfinite(med.slope));
}

TEST_CASE("degenerate fits are rejected") {
    CHECK_THROWS_AS(fit(synthetic({10, 10, 10}, [](double n) { return n; }), Quantity::edges), std::invalid_argument);
    CHECK_THROWS_AS(fit(synthetic({10, 20}, [](double n) { return n; }), Quantity::edges), std::invalid_argument);
    CHECK_THROWS_AS(fit(synthetic({10, 20, 30}, [](double) { return 0.0; }), Quantity::edges), std::invalid_argument);
    CHECK(parse_quantity("codegree") == Quantity::codegree);
    CHECK_THROWS(parse_quantity("edgez"));
}

TEST_CASE("fit record and svg") {
    const auto f = fit(synthetic({10, 20, 40}, [](double n) { return n * n; }), Quantity::edges, Rational(2));
    const auto line = fit_record(f);
    CHECK(line.find("quantity=edges") != std::string::npos);
    CHECK(line.find("predicted=2/1") != std::string::npos);
    std::ostringstream svg;
    write_fit_svg(svg, f);
    CHECK(svg.str().find("<svg") != std::string::npos);
    CHECK(svg.str().find("</svg>") != std::string::npos);
}
