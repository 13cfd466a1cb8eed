// hfree: command-line front end for the F-free process toolkit.
//
// Subcommands: analyze, run, gnp, clusters, sweep, fit. Errors go to stderr
// as a single line `error kind=<kind> message="<text>"` with a nonzero exit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hfree/embedder.hpp"
#include "hfree/gnp.hpp"
#include "hfree/harness.hpp"
#include "hfree/hypergraph.hpp"
#include "hfree/pattern.hpp"
#include "hfree/process.hpp"

namespace {

using namespace hfree;

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
    std::uint64_t mem_budget = kDefaultMemoryBudget;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += (c == '\n') ? ' ' : c;
    }
    return out + "\"";
}

int fail(const std::string& kind, const std::string& message, int code) {
    std::cerr << "error kind=" << kind << " message=" << quote(message) << '\n';
    return code;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    return out;
}

void dump_graph(const std::string& path, const Hypergraph& h) {
    if (path.empty()) return;
    auto out = open_out(path);
    write_hypergraph(out, h);
}

int cmd_analyze(const std::string& source) {
    const Pattern p = load_pattern(source);
    const PatternProfile prof = analyze(p);
    print_profile(std::cout, p, prof);
    std::cout << '\n' << profile_record(p, prof) << '\n';
    return 0;
}

struct RunArgs {
    std::string pattern;
    std::uint32_t n = 0;
    double p_stop = 1.0;
    std::string dump_graph;
    std::string trajectory;
    bool prune = false;
};

int cmd_run(const Globals& g, const RunArgs& a) {
    const Pattern p = load_pattern(a.pattern);
    ProcessOptions opts;
    opts.p_stop = a.p_stop;
    opts.memory_budget = g.mem_budget;
    opts.embedder.prune_automorphisms = a.prune;
    const ProcessResult res = run_process(a.n, p, g.seed, opts);
    dump_graph(a.dump_graph, res.final_graph);
    if (!a.trajectory.empty()) {
        auto out = open_out(a.trajectory);
        write_trajectory_csv(out, res.trajectory);
    }
    std::cout << "pattern=" << p.name() << " n=" << a.n << " seed=" << g.seed << " p_stop=" << a.p_stop
              << " examined=" << res.examined << " accepted=" << res.accepted << " max_codegree=" << res.max_codegree
              << '\n';
    return 0;
}

struct GnpArgs {
    std::string pattern;
    std::uint32_t n = 0;
    std::optional<double> p;
    std::optional<double> c2;
    std::string dump_base;
    std::string dump_reduced;
};

double resolve_p(const Pattern& pat, std::uint32_t n, std::optional<double> p, std::optional<double> c2,
                 bool& clamped) {
    clamped = false;
    if (p) return *p;
    const auto val = default_p(n, analyze(pat), *c2);
    clamped = val.clamped;
    return val.value;
}

int cmd_gnp(const Globals& g, const GnpArgs& a) {
    const Pattern pat = load_pattern(a.pattern);
    bool clamped = false;
    const double p = resolve_p(pat, a.n, a.p, a.c2, clamped);
    const GnpSample s = sample_gnp(a.n, p, pat, g.seed, g.mem_budget);
    dump_graph(a.dump_base, s.base);
    dump_graph(a.dump_reduced, s.reduced);
    std::cout << "pattern=" << pat.name() << " n=" << a.n << " seed=" << g.seed << " p=" << p
              << " clamped=" << (clamped ? "true" : "false") << " base_edges=" << s.base.edge_count()
              << " reduced_edges=" << s.reduced.edge_count() << " removed_edges=" << s.removed_edges << '\n';
    return 0;
}

struct ClusterArgs {
    std::string pattern;
    std::uint32_t n = 0;
    double p = 0.0;
    std::size_t r = 2;
    std::uint64_t budget = 1'000'000;
    std::size_t samples = 0;
};

int cmd_clusters(const Globals& g, const ClusterArgs& a) {
    const Pattern pat = load_pattern(a.pattern);
    const BirthOrder order = make_birth_order(g.seed, a.n, pat.k(), g.mem_budget);
    const std::uint64_t len = order.prefix_length(a.p);
    Hypergraph base(a.n, pat.k());
    std::vector<Vertex> vs(static_cast<std::size_t>(pat.k()));
    for (std::uint64_t j = 0; j < len; ++j) {
        base.unrank_into(order.permutation[j], vs.data());
        base.add_sorted(vs.data());
    }
    // sampled edges: the earliest-born ones
    const std::uint64_t count = a.samples == 0 ? len : std::min<std::uint64_t>(len, a.samples);
    for (std::uint64_t j = 0; j < count; ++j) {
        const Edge f = edge_unrank(order.permutation[j], a.n, pat.k());
        std::cout << cluster_record(cluster_report(base, pat, f, a.r, a.budget)) << '\n';
    }
    return 0;
}

struct SweepArgs {
    std::string pattern;
    std::vector<std::uint32_t> n_list;
    std::size_t trials = 1;
    double p_stop = 1.0;
    std::string out;
    bool timing = false;
    bool prune = false;
};

int cmd_sweep(const Globals& g, const SweepArgs& a) {
    const Pattern pat = load_pattern(a.pattern);
    SweepOptions opts;
    opts.n_list = a.n_list;
    opts.trials = a.trials;
    opts.base_seed = g.seed;
    opts.p_stop = a.p_stop;
    opts.threads = g.threads;
    opts.record_runtime = a.timing;
    opts.memory_budget = g.mem_budget;
    opts.embedder.prune_automorphisms = a.prune;
    const SweepResult res = sweep(pat, opts);
    if (a.out.empty()) {
        write_sweep_csv(std::cout, res.records);
    } else {
        auto out = open_out(a.out);
        write_sweep_csv(out, res.records);
    }
    for (const auto& f : res.failures) {
        std::cerr << "failure n=" << f.n << " seed=" << f.seed << " message=" << quote(f.message) << '\n';
    }
    return 0;
}

struct FitArgs {
    std::string in;
    std::string quantity = "edges";
    std::string pattern;
    bool median = false;
    bool two_term = false;
    std::string svg;
};

int cmd_fit(const FitArgs& a) {
    std::ifstream in(a.in);
    if (!in) throw std::invalid_argument("cannot open '" + a.in + "'");
    const auto records = read_sweep_csv(in);
    const Quantity q = parse_quantity(a.quantity);
    const Aggregate agg = a.median ? Aggregate::median : Aggregate::mean;

    std::optional<Rational> predicted;
    std::string source = a.pattern;
    if (source.empty() && !records.empty()) source = "builtin:" + records.front().pattern;
    if (!source.empty()) {
        try {
            const auto prof = analyze(load_pattern(source));
            predicted = q == Quantity::edges ? prof.exponents.edges_upper : prof.exponents.codegree_upper;
        } catch (const std::invalid_argument&) {
            if (!a.pattern.empty()) throw;
        }
    }
    const FitResult f = fit(records, q, predicted, agg);
    std::cout << fit_record(f) << '\n';
    if (a.two_term) {
        const TwoTermFit t = fit_two_term(records, q, agg);
        std::cout << "two_term a=" << t.a << " b=" << t.b << " c=" << t.c << " r_squared=" << t.r_squared << '\n';
    }
    if (!a.svg.empty()) {
        auto out = open_out(a.svg);
        write_fit_svg(out, f);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random greedy F-free process on k-uniform hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Seed (base seed for sweeps)");
    app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--mem-budget", g.mem_budget, "Memory budget per run, e.g. 2GiB")
        ->transform(CLI::AsSizeValue(false));

    std::string analyze_source;
    auto* analyze_cmd = app.add_subcommand("analyze", "Profile a pattern: balance, h_i, delta_i, exponents");
    analyze_cmd->add_option("pattern", analyze_source, "Pattern file or builtin:NAME")->required();

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run the greedy process once");
    run_cmd->add_option("--pattern", run_args.pattern)->required();
    run_cmd->add_option("--n", run_args.n)->required();
    run_cmd->add_option("--p-stop", run_args.p_stop)->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--dump-graph", run_args.dump_graph);
    run_cmd->add_option("--trajectory", run_args.trajectory);
    run_cmd->add_flag("--prune-automorphisms", run_args.prune);

    GnpArgs gnp_args;
    auto* gnp_cmd = app.add_subcommand("gnp", "Sample H_{n,p} and its pattern-free reduction");
    gnp_cmd->add_option("--pattern", gnp_args.pattern)->required();
    gnp_cmd->add_option("--n", gnp_args.n)->required();
    auto* p_opt = gnp_cmd->add_option("--p", gnp_args.p)->check(CLI::Range(0.0, 1.0));
    auto* c2_opt = gnp_cmd->add_option("--c2", gnp_args.c2)->check(CLI::PositiveNumber);
    p_opt->excludes(c2_opt);
    gnp_cmd->add_option("--dump-base", gnp_args.dump_base);
    gnp_cmd->add_option("--dump-reduced", gnp_args.dump_reduced);

    ClusterArgs cl_args;
    auto* cl_cmd = app.add_subcommand("clusters", "Cluster reports for edges of H_{n,p}");
    cl_cmd->add_option("--pattern", cl_args.pattern)->required();
    cl_cmd->add_option("--n", cl_args.n)->required();
    cl_cmd->add_option("--p", cl_args.p)->required()->check(CLI::Range(0.0, 1.0));
    cl_cmd->add_option("--r", cl_args.r)->required();
    cl_cmd->add_option("--budget", cl_args.budget);
    cl_cmd->add_option("--samples", cl_args.samples, "Edges to report (earliest born; 0 = all)");

    SweepArgs sw_args;
    auto* sw_cmd = app.add_subcommand("sweep", "Seeded runs over several n, CSV output");
    sw_cmd->add_option("--pattern", sw_args.pattern)->required();
    sw_cmd->add_option("--n-list", sw_args.n_list)->required()->delimiter(',');
    sw_cmd->add_option("--trials", sw_args.trials)->required();
    sw_cmd->add_option("--p-stop", sw_args.p_stop)->check(CLI::Range(0.0, 1.0));
    sw_cmd->add_option("--out", sw_args.out);
    sw_cmd->add_flag("--timing", sw_args.timing, "Fill runtime_ms (breaks byte-reproducibility)");
    sw_cmd->add_flag("--prune-automorphisms", sw_args.prune);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Log-log exponent fit of a sweep CSV");
    fit_cmd->add_option("--in", fit_args.in)->required();
    fit_cmd->add_option("--quantity", fit_args.quantity)->check(CLI::IsMember({"edges", "codegree"}));
    fit_cmd->add_option("--pattern", fit_args.pattern, "Pattern for the predicted slope");
    fit_cmd->add_flag("--median", fit_args.median);
    fit_cmd->add_flag("--two-term", fit_args.two_term);
    fit_cmd->add_option("--svg", fit_args.svg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*analyze_cmd) return cmd_analyze(analyze_source);
        if (*run_cmd) return cmd_run(g, run_args);
        if (*gnp_cmd) {
            if (!gnp_args.p && !gnp_args.c2) return fail("usage", "gnp needs --p or --c2", 2);
            return cmd_gnp(g, gnp_args);
        }
        if (*cl_cmd) return cmd_clusters(g, cl_args);
        if (*sw_cmd) return cmd_sweep(g, sw_args);
        if (*fit_cmd) return cmd_fit(fit_args);
    } catch (const MemoryBudgetExceeded& e) {
        return fail("memory_budget", e.what(), 3);
    } catch (const std::invalid_argument& e) {
        return fail("invalid_argument", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
    return 0;
}
