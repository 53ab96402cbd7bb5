#include "tardis/reach.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tardis {

ForemostTable foremost_arrivals(const TemporalGraph& g, Vertex source, std::optional<Time> depart_after,
                                Semantics semantics) {
    const std::size_t n = g.num_vertices();
    if (source >= n) throw PreconditionError("source vertex out of range");
    ForemostTable tab{source, depart_after, semantics, std::vector<Time>(n, kUnreachable)};
    auto& arr = tab.arrival;
    if (!depart_after) arr[source] = 0;
    const bool strict = semantics == Semantics::Strict;

    // Whether x may traverse a time-edge at time t.
    auto usable = [&](Vertex x, Time t) {
        if (depart_after && x == source) return strict ? t > *depart_after : t >= *depart_after;
        if (arr[x] == kUnreachable) return false;
        return strict ? arr[x] < t : arr[x] <= t;
    };
    auto settle = [&](Vertex x) { return arr[x] != kUnreachable || (depart_after && x == source); };

    std::vector<Vertex> fresh, queue;
    for (Time t = 1; t <= g.lifetime(); ++t) {
        auto snap = g.snapshot(t);
        if (snap.empty()) continue;
        if (strict) {
            fresh.clear();
            for (const auto& e : snap) {
                if (!settle(e.v) && usable(e.u, t)) fresh.push_back(e.v);
                if (!settle(e.u) && usable(e.v, t)) fresh.push_back(e.u);
            }
            for (Vertex x : fresh) arr[x] = t;
        } else {
            queue.clear();
            for (const auto& e : snap) {
                if (!settle(e.v) && usable(e.u, t)) { arr[e.v] = t; queue.push_back(e.v); }
                if (!settle(e.u) && usable(e.v, t)) { arr[e.u] = t; queue.push_back(e.u); }
            }
            while (!queue.empty()) {
                Vertex x = queue.back();
                queue.pop_back();
                const auto& inc = g.incidences(x);
                auto it = std::lower_bound(inc.begin(), inc.end(), std::pair<Time, Vertex>{t, 0});
                for (; it != inc.end() && it->first == t; ++it)
                    if (!settle(it->second)) {
                        arr[it->second] = t;
                        queue.push_back(it->second);
                    }
            }
        }
    }
    return tab;
}

Bitset reach_bits(const TemporalGraph& g, Vertex source, Semantics semantics) {
    auto tab = foremost_arrivals(g, source, std::nullopt, semantics);
    Bitset b(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (tab.reachable(v)) b.set(v);
    return b;
}

VertexSet reach_set(const TemporalGraph& g, Vertex source, Semantics semantics) {
    auto tab = foremost_arrivals(g, source, std::nullopt, semantics);
    VertexSet out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (tab.reachable(v)) out.push_back(v);
    return out;
}

std::vector<Bitset> ReachClosure::transpose() const {
    const std::size_t n = rows_.size();
    std::vector<Bitset> cols(n, Bitset(n));
    for (std::size_t u = 0; u < n; ++u)
        for (auto v = rows_[u].find_first(); v != Bitset::npos; v = rows_[u].find_next(v)) cols[v].set(u);
    return cols;
}

ReachClosure closure_serial(const TemporalGraph& g, Semantics semantics) {
    std::vector<Bitset> rows(g.num_vertices());
    for (Vertex u = 0; u < g.num_vertices(); ++u) rows[u] = reach_bits(g, u, semantics);
    return ReachClosure(std::move(rows));
}

ReachClosure closure(const TemporalGraph& g, Semantics semantics) {
    const auto n = static_cast<std::int64_t>(g.num_vertices());
    std::vector<Bitset> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 4) if (n >= 64)
    for (std::int64_t u = 0; u < n; ++u) rows[u] = reach_bits(g, static_cast<Vertex>(u), semantics);
    return ReachClosure(std::move(rows));
}

bool is_tardis(const ReachClosure& c, std::span<const Vertex> s) {
    Bitset acc(c.size());
    for (Vertex v : s) {
        if (v >= c.size()) throw PreconditionError("vertex out of range");
        acc |= c.row(v);
    }
    return acc.all();
}

bool is_tardis(const TemporalGraph& g, std::span<const Vertex> s, Semantics semantics) {
    Bitset acc(g.num_vertices());
    for (Vertex v : s) {
        if (v >= g.num_vertices()) throw PreconditionError("vertex out of range");
        acc |= reach_bits(g, v, semantics);
    }
    return acc.all();
}

VertexSet sole_reachability_set(const ReachClosure& c, std::span<const Vertex> s, Vertex x) {
    Bitset others(c.size());
    for (Vertex y : s)
        if (y != x) others |= c.row(y);
    Bitset sole = c.row(x) - others;
    VertexSet out;
    for (auto v = sole.find_first(); v != Bitset::npos; v = sole.find_next(v)) out.push_back(static_cast<Vertex>(v));
    return out;
}

}  // namespace tardis
