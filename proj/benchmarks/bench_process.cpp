#include <benchmark/benchmark.h>

#include "hfree/embedder.hpp"
#include "hfree/process.hpp"
#include "hfree/random.hpp"

using namespace hfree;

namespace {

// Host: the triangle-free process at n = 256, then probe random non-edges.
void BM_AnchoredCheckTriangle(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const Pattern tri = make_clique(3, 2);
    ProcessResult res = run_process(n, tri, 7);
    Hypergraph h = std::move(res.final_graph);
    const Embedder emb(tri);
    SplitMix64 rng(11);
    for (auto _ : state) {
        Vertex vs[2];
        do {
            vs[0] = static_cast<Vertex>(rng.below(n));
            vs[1] = static_cast<Vertex>(rng.below(n));
        } while (vs[0] == vs[1]);
        if (vs[0] > vs[1]) std::swap(vs[0], vs[1]);
        const bool had = h.contains_rank(edge_rank(std::span<const Vertex>(vs, 2), n));
        if (!had) h.add_sorted(vs);
        benchmark::DoNotOptimize(emb.creates_copy_with_anchor(h, vs));
        if (!had) h.remove_sorted(vs);
    }
}
BENCHMARK(BM_AnchoredCheckTriangle)->Arg(256)->Arg(1024);

void BM_ProcessTriangle(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const Pattern tri = make_clique(3, 2);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_process(n, tri, seed++).accepted);
}
BENCHMARK(BM_ProcessTriangle)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_ProcessK4Uniform3(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const Pattern k43 = make_clique(4, 3);
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_process(n, k43, seed++).accepted);
}
BENCHMARK(BM_ProcessK4Uniform3)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
