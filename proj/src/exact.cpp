#include "tardis/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "tardis/setcover.hpp"

namespace tardis {

namespace {

// Advances `idx` to the next k-combination of [0,n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

VertexSet isolated_vertices(const TemporalGraph& g) {
    VertexSet out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (g.incidences(v).empty()) out.push_back(v);
    return out;
}

VertexSet merge_sets(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Smallest subset of `cand` (by size, then lexicographic) whose rows cover V.
std::optional<VertexSet> enumerate_cover(const ReachClosure& c, const VertexSet& cand, std::size_t max_size) {
    const std::size_t n = c.size();
    for (std::size_t k = 0; k <= std::min(max_size, cand.size()); ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            Bitset acc(n);
            for (std::size_t i : idx) acc |= c.row(cand[i]);
            if (acc.all()) {
                VertexSet out;
                for (std::size_t i : idx) out.push_back(cand[i]);
                return out;
            }
        } while (k > 0 && next_combination(idx, cand.size()));
    }
    return std::nullopt;
}

}  // namespace

TardisResult min_tardis_bruteforce(const TemporalGraph& g, Semantics semantics, std::size_t max_vertices) {
    const std::size_t n = g.num_vertices();
    if (n > max_vertices || n > 64)
        throw BudgetExceeded("bruteforce oracle refuses n=" + std::to_string(n) + " (cap " +
                             std::to_string(std::min<std::size_t>(max_vertices, 64)) + ")");
    std::vector<std::uint64_t> rows(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        auto tab = foremost_arrivals(g, u, std::nullopt, semantics);
        for (Vertex v = 0; v < n; ++v)
            if (tab.reachable(v)) rows[u] |= std::uint64_t{1} << v;
    }
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            std::uint64_t acc = 0;
            for (std::size_t i : idx) acc |= rows[i];
            if (acc == full) {
                VertexSet w(idx.begin(), idx.end());
                return {k, std::move(w), "bruteforce", semantics};
            }
        } while (k > 0 && next_combination(idx, n));
    }
    throw Error("unreachable: V is always a TaRDiS");
}

VertexSet default_candidates(const TemporalGraph& g, Semantics semantics) {
    if (semantics == Semantics::Strict && !classify(g).proper) {
        VertexSet all(g.num_vertices());
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    auto lee = locally_earliest_edges(g, semantics == Semantics::Nonstrict);
    return merge_sets(lee.endpoints, isolated_vertices(g));
}

TardisResult min_tardis_setcover(const TemporalGraph& g, Semantics semantics, const SetCoverOptions& opts) {
    const std::size_t n = g.num_vertices();
    auto c = closure(g, semantics);
    VertexSet cand = opts.candidates ? normalize_set(*opts.candidates, n) : default_candidates(g, semantics);
    {
        Bitset acc(n);
        for (Vertex v : cand) acc |= c.row(v);
        if (!acc.all()) throw InfeasibleError("candidate set cannot reach every vertex");
    }

    if (opts.strategy == SetCoverStrategy::LeeEnumeration) {
        const bool proper = classify(g).proper;
        if (semantics == Semantics::Strict && !proper)
            throw PreconditionError("LEE enumeration for strict semantics needs a proper graph");
        auto lee = locally_earliest_edges(g, semantics == Semantics::Nonstrict);
        const std::size_t bound = lee.time_edges.size() + isolated_vertices(g).size();
        auto found = enumerate_cover(c, cand, bound);
        if (!found) throw Error("no TaRDiS within the locally-earliest bound; candidate set is not canonical");
        return {found->size(), std::move(*found), "lee-enumeration", semantics};
    }

    std::vector<Bitset> sets;
    sets.reserve(cand.size());
    for (Vertex v : cand) sets.push_back(c.row(v));
    auto chosen = min_set_cover(sets, n);
    VertexSet w;
    for (std::size_t i : *chosen) w.push_back(cand[i]);
    std::sort(w.begin(), w.end());
    return {w.size(), std::move(w), "setcover", semantics};
}

VertexSet canonicalize_tardis(const TemporalGraph& g, std::span<const Vertex> s, Semantics semantics) {
    const std::size_t n = g.num_vertices();
    VertexSet cur = normalize_set(s, n);
    if (semantics == Semantics::Strict && !classify(g).proper)
        throw PreconditionError("strict canonicalization needs a proper graph");
    if (!is_tardis(g, cur, semantics)) throw PreconditionError("input set is not a TaRDiS");

    auto lee = locally_earliest_edges(g, true);
    std::vector<char> canon(n, 0);
    for (Vertex v : lee.endpoints) canon[v] = 1;

    VertexSet out;
    for (Vertex x : cur) {
        // Each hop strictly lowers the earliest incident time, so this stops.
        while (!canon[x] && !g.incidences(x).empty()) {
            auto [t, u] = g.incidences(x).front();
            const auto& iu = g.incidences(u);
            Time best_t = iu.front().first;
            Vertex v = iu.front().second;
            if (best_t > t) throw Error("canonicalization invariant broken");
            x = v;
        }
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Greedy interval cover on a path or cycle component of a happy graph with
// lifetime <= 2. `order` lists the vertices along the component; w[j] is the
// time of the edge order[j]--order[j+1] (wrapping for cycles).
void cover_line(const std::vector<Vertex>& order, const std::vector<Time>& w, bool cyclic, Time tau,
                VertexSet& out) {
    const auto len = static_cast<std::int64_t>(order.size());
    auto wt = [&](std::int64_t j) { return w[static_cast<std::size_t>(((j % len) + len) % len)]; };
    std::vector<std::int64_t> left(order.size()), right(order.size());
    for (std::int64_t i = 0; i < len; ++i) {
        std::int64_t r = 0;
        Time last = 0;
        while ((cyclic ? r < len - 1 : i + r < len - 1) && wt(i + r) > last) last = wt(i + r++);
        std::int64_t l = 0;
        last = 0;
        while ((cyclic ? l < len - 1 : i - l > 0) && wt(i - l - 1) > last) last = wt(i - l++ - 1);
        left[i] = l;
        right[i] = r;
    }
    auto at = [&](std::int64_t q) { return static_cast<std::size_t>(((q % len) + len) % len); };

    std::int64_t cur = 0, stop = len - 1;
    if (cyclic) {
        out.push_back(order[0]);
        if (left[0] + right[0] + 1 >= len) return;
        cur = right[0] + 1;
        stop = len - 1 - left[0];
    }
    const auto reach = static_cast<std::int64_t>(tau);
    while (cur <= stop) {
        std::int64_t best_end = -1;
        Vertex best_v = 0;
        for (std::int64_t q = cur - reach; q <= cur + reach; ++q) {
            if (!cyclic && (q < 0 || q >= len)) continue;
            auto k = at(q);
            if (q - left[k] > cur || q + right[k] < cur) continue;
            std::int64_t end = q + right[k];
            if (end > best_end || (end == best_end && order[k] < best_v)) {
                best_end = end;
                best_v = order[k];
            }
        }
        if (best_end < cur) throw Error("interval cover made no progress");
        out.push_back(best_v);
        cur = best_end + 1;
    }
}

}  // namespace

std::optional<TardisResult> min_tardis_special(const TemporalGraph& g, Semantics semantics) {
    const auto cls = classify(g);
    const Time tau = g.lifetime();
    const auto h = g.footprint();
    const std::size_t n = g.num_vertices();

    if (tau <= 1 && (semantics == Semantics::Nonstrict || cls.happy)) {
        auto id = h.component_ids();
        VertexSet w;
        std::vector<char> seen(cls.component_count, 0);
        for (Vertex v = 0; v < n; ++v)
            if (!seen[id[v]]) {
                seen[id[v]] = 1;
                w.push_back(v);
            }
        return TardisResult{w.size(), std::move(w), "components", semantics};
    }
    if (!cls.happy || tau > 2) return std::nullopt;

    VertexSet w;
    std::vector<char> done(n, 0);
    auto time_of = [&](Vertex a, Vertex b) { return g.edges()[*g.edge_index(a, b)].times.front(); };
    auto walk = [&](Vertex start, Vertex first_next, std::vector<Vertex>& order, std::vector<Time>& wts) {
        Vertex prev = start, x = first_next;
        order.push_back(start);
        done[start] = 1;
        while (!done[x]) {
            wts.push_back(time_of(prev, x));
            order.push_back(x);
            done[x] = 1;
            Vertex nxt = x;
            for (Vertex y : h.neighbours(x))
                if (y != prev) nxt = y;
            if (nxt == x) return;
            prev = x;
            x = nxt;
        }
        wts.push_back(time_of(prev, x));  // closing edge of a cycle
    };

    auto id = h.component_ids();
    std::vector<std::vector<Vertex>> comps(cls.component_count);
    for (Vertex v = 0; v < n; ++v) comps[id[v]].push_back(v);
    for (const auto& comp : comps) {
        if (comp.size() == 1) {
            w.push_back(comp[0]);
            continue;
        }
        std::vector<Vertex> order;
        std::vector<Time> wts;
        auto leaf = std::find_if(comp.begin(), comp.end(), [&](Vertex v) { return h.degree(v) == 1; });
        if (leaf != comp.end()) {
            walk(*leaf, h.neighbours(*leaf).front(), order, wts);
            cover_line(order, wts, false, tau, w);
        } else {
            Vertex start = comp.front();
            for (Vertex v : comp)
                if (g.incidences(v).front().first == 1) {
                    start = v;
                    break;
                }
            walk(start, h.neighbours(start).front(), order, wts);
            cover_line(order, wts, true, tau, w);
        }
    }
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return TardisResult{w.size(), std::move(w), "special", semantics};
}

std::optional<bool> quick_reject_strict(const TemporalGraph& g, std::size_t k) {
    const std::size_t n = g.num_vertices();
    const std::size_t delta = g.footprint().max_degree();
    // Saturates once the per-vertex bound alone exceeds n.
    std::size_t bound = 1;
    if (delta > 0 && g.lifetime() > 0) {
        bound = 2;
        for (Time i = 0; i < g.lifetime() && bound <= n; ++i) bound *= delta;
    }
    if (k == 0) return n > 0 ? std::optional<bool>(false) : std::nullopt;
    if (bound > n) return std::nullopt;
    if (n / k >= bound && n > bound * k) return false;
    return std::nullopt;
}

}  // namespace tardis
