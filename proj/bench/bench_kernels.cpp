#include <benchmark/benchmark.h>

#include <random>

#include "tardis/maxmin.hpp"
#include "tardis/reach.hpp"

using namespace tardis;

namespace {

TemporalGraph random_instance(std::size_t n, double p, Time tau, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<Time> when(1, tau);
    std::vector<TimeEdge> te;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) te.push_back({u, v, when(rng)});
    return TemporalGraph(n, std::move(te));
}

StaticGraph clique(std::size_t n) {
    StaticGraph h(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) h.add_edge(u, v);
    return h;
}

void BM_Closure(benchmark::State& state) {
    auto g = random_instance(state.range(0), 8.0 / state.range(0), 20, 1);
    for (auto _ : state) benchmark::DoNotOptimize(closure(g, Semantics::Strict));
}

void BM_ClosureSerial(benchmark::State& state) {
    auto g = random_instance(state.range(0), 8.0 / state.range(0), 20, 1);
    for (auto _ : state) benchmark::DoNotOptimize(closure_serial(g, Semantics::Strict));
}

// Cliques never reach value n, so every assignment is evaluated.
void BM_Enumerate(benchmark::State& state) {
    auto h = clique(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(maxmin_enumerate(h, 2, Variant::Nonstrict));
}

void BM_EnumerateSerial(benchmark::State& state) {
    auto h = clique(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(maxmin_enumerate_serial(h, 2, Variant::Nonstrict));
}

}  // namespace

BENCHMARK(BM_Closure)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureSerial)->Arg(256)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateSerial)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
