#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "tardis/core.hpp"
#include "tardis/reach.hpp"

namespace testing_support {

using namespace tardis;

// G(n,p) footprint; each edge gets between 1 and max_app distinct times in [1,tau].
inline TemporalGraph random_temporal(std::mt19937_64& rng, std::size_t n, double p, Time tau,
                                     std::size_t max_app = 2) {
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<Time> when(1, tau);
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, std::min<std::size_t>(max_app, tau)));
    std::vector<TimeEdge> te;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (!coin(rng)) continue;
            std::size_t c = count(rng);
            std::vector<Time> ts;
            while (ts.size() < c) {
                Time t = when(rng);
                if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
            }
            for (Time t : ts) te.push_back({u, v, t});
        }
    return TemporalGraph(n, std::move(te));
}

// Uniform random labelled tree via random parent attachment, then a shuffled relabelling.
inline StaticGraph random_tree(std::mt19937_64& rng, std::size_t n) {
    std::vector<Vertex> perm(n);
    for (Vertex i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    StaticGraph h(n);
    for (Vertex i = 1; i < n; ++i) {
        std::uniform_int_distribution<Vertex> par(0, i - 1);
        h.add_edge(perm[i], perm[par(rng)]);
    }
    return h;
}

inline StaticGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    StaticGraph h(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) h.add_edge(u, v);
    return h;
}

inline StaticGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, double p) {
    auto h = random_tree(rng, n);
    std::bernoulli_distribution coin(p);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) h.add_edge(u, v);
    return h;
}

inline TemporalGraph assign_times(std::mt19937_64& rng, const StaticGraph& h, Time tau, std::size_t max_app) {
    std::uniform_int_distribution<Time> when(1, tau);
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, std::min<std::size_t>(max_app, tau)));
    std::vector<TimeEdge> te;
    for (auto [u, v] : h.edges()) {
        std::size_t c = count(rng);
        std::vector<Time> ts;
        while (ts.size() < c) {
            Time t = when(rng);
            if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
        }
        for (Time t : ts) te.push_back({u, v, t});
    }
    return TemporalGraph(h.num_vertices(), std::move(te));
}

// Independent oracle: exhaustive DFS over temporal paths (distinct vertices).
inline std::vector<Time> arrivals_by_path_enumeration(const TemporalGraph& g, Vertex s, Semantics sem) {
    const std::size_t n = g.num_vertices();
    std::vector<Time> best(n, kUnreachable);
    best[s] = 0;
    std::vector<char> on(n, 0);
    std::function<void(Vertex, Time, bool)> dfs = [&](Vertex x, Time last, bool started) {
        on[x] = 1;
        for (const auto& e : g.time_edges()) {
            Vertex y;
            if (e.u == x) y = e.v;
            else if (e.v == x) y = e.u;
            else continue;
            if (on[y]) continue;
            if (started && (sem == Semantics::Strict ? e.t <= last : e.t < last)) continue;
            best[y] = std::min(best[y], e.t);
            dfs(y, e.t, true);
        }
        on[x] = 0;
    };
    dfs(s, 0, false);
    return best;
}

}  // namespace testing_support
