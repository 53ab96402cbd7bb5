#include "tardis/maxmin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "tardis/error.hpp"
#include "tardis/exact.hpp"
#include "tardis/reach.hpp"
#include "tardis/setcover.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tardis {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Strict: return "strict";
        case Variant::Nonstrict: return "nonstrict";
        case Variant::Happy: return "happy";
    }
    return "nonstrict";
}

Variant parse_variant(std::string_view text) {
    if (text == "strict") return Variant::Strict;
    if (text == "nonstrict" || text == "non-strict") return Variant::Nonstrict;
    if (text == "happy") return Variant::Happy;
    throw PreconditionError("unknown variant '" + std::string(text) + "'");
}

Semantics semantics_of(Variant v) { return v == Variant::Strict ? Semantics::Strict : Semantics::Nonstrict; }

MaxMinAlgo parse_maxmin_algo(std::string_view text) {
    if (text == "auto") return MaxMinAlgo::Auto;
    if (text == "enum" || text == "enumeration") return MaxMinAlgo::Enumeration;
    if (text == "shortcut") return MaxMinAlgo::Shortcut;
    throw PreconditionError("unknown maxmin algorithm '" + std::string(text) + "'");
}

namespace {

using Mask = std::uint64_t;

// Minimum TaRDiS of simple assignments on one footprint. Masks for n <= 64,
// the general solver beyond that.
class SimpleEvaluator {
public:
    SimpleEvaluator(const StaticGraph& h, Time tau, Semantics sem)
        : h_(h), edges_(h.edges()), sem_(sem), by_time_(tau + 1), reach_(h.num_vertices()),
          cov_(h.num_vertices()) {}

    std::size_t min_size(std::span<const Time> times) {
        const std::size_t n = h_.num_vertices();
        if (n > 64) return min_tardis_setcover(TemporalGraph::from_assignment(h_, times), sem_).size;
        sweep(times);
        for (std::size_t d = 1; d <= n; ++d)
            if (covers(full(), d)) return d;
        return 0;
    }

    // min_size(times) >= target, without computing the exact value.
    bool at_least(std::span<const Time> times, std::size_t target) {
        const std::size_t n = h_.num_vertices();
        if (target == 0) return true;
        if (n > 64) return min_size(times) >= target;
        sweep(times);
        return !covers(full(), target - 1);
    }

private:
    Mask full() const {
        const std::size_t n = h_.num_vertices();
        return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    }

    void sweep(std::span<const Time> times) {
        const std::size_t n = h_.num_vertices();
        for (auto& b : by_time_) b.clear();
        for (std::size_t i = 0; i < edges_.size(); ++i) by_time_[times[i]].push_back(i);
        // reach_[x]: sources with a path to x so far.
        for (std::size_t x = 0; x < n; ++x) reach_[x] = Mask{1} << x;
        for (std::size_t t = 1; t < by_time_.size(); ++t) {
            const auto& snap = by_time_[t];
            if (snap.empty()) continue;
            if (sem_ == Semantics::Strict) {
                snap_old_.clear();
                for (std::size_t i : snap) snap_old_.push_back({reach_[edges_[i].first], reach_[edges_[i].second]});
                for (std::size_t k = 0; k < snap.size(); ++k) {
                    reach_[edges_[snap[k]].second] |= snap_old_[k].first;
                    reach_[edges_[snap[k]].first] |= snap_old_[k].second;
                }
            } else {
                for (bool changed = true; changed;) {
                    changed = false;
                    for (std::size_t i : snap) {
                        auto [u, v] = edges_[i];
                        Mask a = reach_[u] | reach_[v];
                        if (a != reach_[u] || a != reach_[v]) {
                            reach_[u] = reach_[v] = a;
                            changed = true;
                        }
                    }
                }
            }
        }
        std::fill(cov_.begin(), cov_.end(), 0);
        max_cov_ = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (Mask r = reach_[x]; r; r &= r - 1) cov_[std::countr_zero(r)] |= Mask{1} << x;
        for (Mask c : cov_) max_cov_ = std::max<std::size_t>(max_cov_, std::popcount(c));
    }

    bool covers(Mask uncovered, std::size_t d) const {
        if (!uncovered) return true;
        if (d == 0 || static_cast<std::size_t>(std::popcount(uncovered)) > d * max_cov_) return false;
        const int x = std::countr_zero(uncovered);
        for (Mask r = reach_[x]; r; r &= r - 1)
            if (covers(uncovered & ~cov_[std::countr_zero(r)], d - 1)) return true;
        return false;
    }

    const StaticGraph& h_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    Semantics sem_;
    std::vector<std::vector<std::size_t>> by_time_;
    std::vector<Mask> reach_;
    std::vector<Mask> cov_;
    std::vector<std::pair<Mask, Mask>> snap_old_;
    std::size_t max_cov_ = 0;
};

// Lexicographic successor over simple (or properly coloured) assignments.
class AssignmentIter {
public:
    AssignmentIter(const StaticGraph& h, Time tau, bool proper)
        : tau_(tau), proper_(proper), a_(h.num_edges(), 0), earlier_(h.num_edges()) {
        auto e = h.edges();
        if (proper)
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (e[i].first == e[j].first || e[i].first == e[j].second || e[i].second == e[j].first ||
                        e[i].second == e[j].second)
                        earlier_[i].push_back(j);
    }

    bool next() {
        const long m = static_cast<long>(a_.size());
        long i;
        if (!started_) {
            started_ = true;
            if (m == 0) return true;
            i = 0;
        } else {
            if (m == 0) return false;
            i = m - 1;
        }
        while (i >= 0) {
            if (++a_[i] > tau_) {
                a_[i] = 0;
                --i;
                continue;
            }
            if (conflicts(static_cast<std::size_t>(i))) continue;
            if (i == m - 1) return true;
            ++i;
        }
        return false;
    }

    const std::vector<Time>& current() const { return a_; }

private:
    bool conflicts(std::size_t i) const {
        if (!proper_) return false;
        for (std::size_t j : earlier_[i])
            if (a_[j] == a_[i]) return true;
        return false;
    }

    Time tau_;
    bool proper_;
    bool started_ = false;
    std::vector<Time> a_;
    std::vector<std::vector<std::size_t>> earlier_;
};

constexpr std::size_t kChunk = 1 << 14;

MaxMinResult enumerate_impl(const StaticGraph& h, Time tau, Variant variant, double budget, bool parallel) {
    if (tau == 0) throw PreconditionError("tau must be at least 1");
    const std::size_t m = h.num_edges();
    const bool happy = variant == Variant::Happy;
    if (!happy && std::pow(static_cast<double>(tau), static_cast<double>(m)) > budget)
        throw BudgetExceeded("enumeration of " + std::to_string(tau) + "^" + std::to_string(m) +
                             " assignments exceeds the budget");
    if (happy && !happy_assignment_exists(h, tau))
        throw InfeasibleError("no happy assignment: H is not " + std::to_string(tau) + "-edge-colourable");

    const Semantics sem = semantics_of(variant);
    AssignmentIter it(h, tau, happy);
    std::vector<Time> buf;
    std::vector<std::size_t> vals;
    long best = -1;
    std::vector<Time> best_assignment;
    double seen = 0;
    bool done = false;
    const std::size_t cap = h.num_vertices();

    while (!done) {
        buf.clear();
        std::size_t k = 0;
        while (k < kChunk) {
            if (!it.next()) {
                done = true;
                break;
            }
            if (++seen > budget) throw BudgetExceeded("happy colouring enumeration exceeds the budget");
            buf.insert(buf.end(), it.current().begin(), it.current().end());
            ++k;
        }
        vals.assign(k, 0);
        const long kk = static_cast<long>(k);
        if (parallel) {
#pragma omp parallel
            {
                SimpleEvaluator ev(h, tau, sem);
#pragma omp for schedule(dynamic, 64)
                for (long j = 0; j < kk; ++j)
                    vals[j] = ev.min_size(std::span<const Time>(buf.data() + j * m, m));
            }
        } else {
            SimpleEvaluator ev(h, tau, sem);
            for (long j = 0; j < kk; ++j) vals[j] = ev.min_size(std::span<const Time>(buf.data() + j * m, m));
        }
        for (std::size_t j = 0; j < k; ++j)
            if (static_cast<long>(vals[j]) > best) {
                best = static_cast<long>(vals[j]);
                best_assignment.assign(buf.begin() + j * m, buf.begin() + (j + 1) * m);
            }
        // Nothing exceeds n.
        if (best == static_cast<long>(cap)) break;
    }
    if (best < 0) throw InfeasibleError("no happy assignment: H is not " + std::to_string(tau) + "-edge-colourable");
    return {static_cast<std::size_t>(best), std::move(best_assignment), variant, tau, "exact-by-enumeration"};
}

std::vector<Bitset> adjacency_bits(const StaticGraph& h) {
    const std::size_t n = h.num_vertices();
    std::vector<Bitset> rows(n, Bitset(n));
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : h.neighbours(v)) rows[v].set(w);
    return rows;
}

class MisSolver {
public:
    explicit MisSolver(const StaticGraph& g) : adj_(adjacency_bits(g)), n_(g.num_vertices()) {}

    VertexSet solve() {
        Bitset cand(n_);
        cand.set();
        VertexSet cur;
        search(cand, cur);
        std::sort(best_.begin(), best_.end());
        return best_;
    }

private:
    // Greedy partition into cliques; each clique holds at most one member.
    std::size_t clique_cover(const Bitset& cand) const {
        std::vector<Bitset> cliques;
        for (auto v = cand.find_first(); v != Bitset::npos; v = cand.find_next(v)) {
            bool placed = false;
            for (auto& c : cliques)
                if (c.is_subset_of(adj_[v])) {
                    c.set(v);
                    placed = true;
                    break;
                }
            if (!placed) {
                cliques.emplace_back(n_);
                cliques.back().set(v);
            }
        }
        return cliques.size();
    }

    void take(Bitset cand, VertexSet& cur, Vertex w) {
        cur.push_back(w);
        cand.reset(w);
        cand -= adj_[w];
        search(cand, cur);
        cur.pop_back();
    }

    void search(const Bitset& cand, VertexSet& cur) {
        if (cand.none()) {
            if (cur.size() > best_.size()) best_ = cur;
            return;
        }
        if (cur.size() + clique_cover(cand) <= best_.size()) return;
        Vertex v = 0;
        std::size_t dv = std::numeric_limits<std::size_t>::max();
        for (auto x = cand.find_first(); x != Bitset::npos; x = cand.find_next(x)) {
            std::size_t d = (adj_[x] & cand).count();
            if (d < dv) {
                dv = d;
                v = static_cast<Vertex>(x);
            }
        }
        // Some maximum set contains v or one of its candidate neighbours; a
        // vertex of degree <= 1 can always be taken.
        take(cand, cur, v);
        if (dv <= 1) return;
        Bitset nb = adj_[v] & cand;
        for (auto w = nb.find_first(); w != Bitset::npos; w = nb.find_next(w))
            take(cand, cur, static_cast<Vertex>(w));
    }

    std::vector<Bitset> adj_;
    std::size_t n_;
    VertexSet best_;
};

VertexSet checked_set(const StaticGraph& h, std::span<const Vertex> s) { return normalize_set(s, h.num_vertices()); }

}  // namespace

std::size_t min_tardis_size_simple(const StaticGraph& h, std::span<const Time> times, Semantics semantics) {
    if (times.size() != h.num_edges()) throw PreconditionError("assignment length differs from the edge count");
    Time tau = 0;
    for (Time t : times) {
        if (t == 0) throw PreconditionError("times must be at least 1");
        tau = std::max(tau, t);
    }
    SimpleEvaluator ev(h, tau, semantics);
    return ev.min_size(times);
}

MaxMinResult maxmin_enumerate(const StaticGraph& h, Time tau, Variant variant, double budget) {
    return enumerate_impl(h, tau, variant, budget, true);
}

MaxMinResult maxmin_enumerate_serial(const StaticGraph& h, Time tau, Variant variant, double budget) {
    return enumerate_impl(h, tau, variant, budget, false);
}

std::optional<std::vector<Time>> find_assignment_with_min_at_least(const StaticGraph& h, Time tau,
                                                                   Semantics semantics, std::size_t target,
                                                                   double budget) {
    if (tau == 0) throw PreconditionError("tau must be at least 1");
    AssignmentIter it(h, tau, false);
    SimpleEvaluator ev(h, tau, semantics);
    double seen = 0;
    while (it.next()) {
        if (++seen > budget) throw BudgetExceeded("assignment search exceeds the budget");
        if (ev.at_least(it.current(), target)) return it.current();
    }
    return std::nullopt;
}

VertexSet min_dominating_set(const StaticGraph& h) {
    const std::size_t n = h.num_vertices();
    auto sets = adjacency_bits(h);
    for (Vertex v = 0; v < n; ++v) sets[v].set(v);
    auto cover = min_set_cover(sets, n);
    VertexSet out;
    for (std::size_t i : *cover) out.push_back(static_cast<Vertex>(i));
    return out;
}

VertexSet max_d3is(const StaticGraph& h) { return MisSolver(h.square()).solve(); }

bool is_d3is(const StaticGraph& h, std::span<const Vertex> s) {
    auto set = checked_set(h, s);
    for (Vertex a : set) {
        auto d = h.distances_from(a);
        for (Vertex b : set)
            if (b != a && d[b] < 3) return false;
    }
    return true;
}

bool is_maximal_d3is(const StaticGraph& h, std::span<const Vertex> s) {
    if (!is_d3is(h, s)) return false;
    auto set = checked_set(h, s);
    std::vector<char> near(h.num_vertices(), 0);
    for (Vertex a : set) {
        auto d = h.distances_from(a);
        for (Vertex v = 0; v < h.num_vertices(); ++v)
            if (d[v] <= 2) near[v] = 1;
    }
    return std::all_of(near.begin(), near.end(), [](char c) { return c != 0; });
}

std::vector<Time> d3is_witness_assignment(const StaticGraph& h, std::span<const Vertex> s) {
    auto set = checked_set(h, s);
    if (!is_d3is(h, set)) throw PreconditionError("S is not a distance-3 independent set");
    if (!is_maximal_d3is(h, set)) throw PreconditionError("S is not a maximal distance-3 independent set");
    std::vector<char> in(h.num_vertices(), 0);
    for (Vertex v : set) in[v] = 1;
    std::vector<Time> times;
    for (auto [u, v] : h.edges()) times.push_back(in[u] || in[v] ? 1 : 2);
    return times;
}

VertexSet extract_independent_tardis(const TemporalGraph& g, std::span<const Vertex> s) {
    if (g.lifetime() != 2) throw PreconditionError("independent TaRDiS extraction needs lifetime exactly 2");
    VertexSet cur = normalize_set(s, g.num_vertices());
    auto c = closure(g, Semantics::Nonstrict);
    if (!is_tardis(c, cur)) throw PreconditionError("S is not a nonstrict TaRDiS");
    if (min_tardis_setcover(g, Semantics::Nonstrict).size != cur.size())
        throw PreconditionError("S is not a minimum nonstrict TaRDiS");

    const auto h = g.footprint();
    const std::size_t rounds = cur.size() * g.num_vertices() + 1;
    for (std::size_t r = 0; r < rounds; ++r) {
        bool replaced = false;
        for (std::size_t i = 0; i < cur.size() && !replaced; ++i) {
            const Vertex x = cur[i];
            auto sr = sole_reachability_set(c, cur, x);
            if (std::binary_search(sr.begin(), sr.end(), x)) continue;
            auto d = h.distances_from(x);
            Vertex best = sr.front();
            for (Vertex v : sr)
                if (d[v] < d[best]) best = v;
            cur[i] = best;
            std::sort(cur.begin(), cur.end());
            replaced = true;
        }
        if (!replaced) return cur;
    }
    throw Error("independent TaRDiS extraction did not converge");
}

std::optional<std::vector<Time>> happy_assignment_exists(const StaticGraph& h, Time tau) {
    auto edges = h.edges();
    const std::size_t m = edges.size();
    if (m == 0) return std::vector<Time>{};
    if (tau == 0 || h.max_degree() > tau) return std::nullopt;

    std::vector<std::vector<std::size_t>> inc(h.num_vertices());
    for (std::size_t i = 0; i < m; ++i) {
        inc[edges[i].first].push_back(i);
        inc[edges[i].second].push_back(i);
    }
    std::vector<Time> col(m, 0);
    auto used = [&](std::size_t e) {
        std::vector<char> u(tau + 1, 0);
        for (Vertex end : {edges[e].first, edges[e].second})
            for (std::size_t f : inc[end]) u[col[f]] = 1;
        return u;
    };

    auto rec = [&](auto&& self, std::size_t left) -> bool {
        if (left == 0) return true;
        std::size_t pick = m, fewest = tau + 1, weight = 0;
        for (std::size_t e = 0; e < m; ++e) {
            if (col[e]) continue;
            auto u = used(e);
            std::size_t avail = 0;
            for (Time t = 1; t <= tau; ++t) avail += !u[t];
            std::size_t w = h.degree(edges[e].first) + h.degree(edges[e].second);
            if (avail < fewest || (avail == fewest && w > weight)) {
                pick = e;
                fewest = avail;
                weight = w;
            }
        }
        if (fewest == 0) return false;
        auto u = used(pick);
        for (Time t = 1; t <= tau; ++t) {
            if (u[t]) continue;
            col[pick] = t;
            if (self(self, left - 1)) return true;
        }
        col[pick] = 0;
        return false;
    };
    if (!rec(rec, m)) return std::nullopt;
    return col;
}

std::optional<bool> quick_reject_strict_maxmin(const StaticGraph& h, std::size_t k) {
    const double n = static_cast<double>(h.num_vertices());
    const double bound = (static_cast<double>(k) - 1.0) * (static_cast<double>(h.max_degree()) + 1.0);
    if (n > bound) return true;
    return std::nullopt;
}

namespace {

// Alternating times along each path or even cycle; a path starts at its
// lowest-index end, so paths with an odd number of edges get time 1 on both
// leaf edges.
std::vector<Time> happy_linear_assignment(const StaticGraph& h, Time tau) {
    auto edges = h.edges();
    std::vector<Time> times(edges.size(), 0);
    const std::size_t n = h.num_vertices();
    std::vector<char> done(n, 0);
    auto walk = [&](Vertex start) {
        Vertex cur = start;
        Time t = 1;
        done[start] = 1;
        for (;;) {
            std::optional<Vertex> nxt;
            for (Vertex w : h.neighbours(cur)) {
                auto e = std::lower_bound(edges.begin(), edges.end(), std::pair{std::min(cur, w), std::max(cur, w)});
                const std::size_t idx = static_cast<std::size_t>(e - edges.begin());
                if (times[idx]) continue;
                times[idx] = tau == 1 ? 1 : t;
                t = t == 1 ? 2 : 1;
                nxt = w;
                break;
            }
            if (!nxt) return;
            cur = *nxt;
            done[cur] = 1;
        }
    };
    for (Vertex v = 0; v < n; ++v)
        if (!done[v] && h.degree(v) <= 1) walk(v);
    for (Vertex v = 0; v < n; ++v)
        if (!done[v]) walk(v);
    return times;
}

}  // namespace

MaxMinResult maxmin_value(const StaticGraph& h, Time tau, Variant variant, MaxMinAlgo algo, double budget) {
    if (tau == 0) throw PreconditionError("tau must be at least 1");
    if (algo == MaxMinAlgo::Enumeration) return maxmin_enumerate(h, tau, variant, budget);

    const std::size_t m = h.num_edges();
    MaxMinResult r{0, {}, variant, tau, ""};
    switch (variant) {
        case Variant::Strict:
            r.value = min_dominating_set(h).size();
            r.witness_assignment.assign(m, 1);
            r.algorithm = "dominating-set";
            return r;
        case Variant::Nonstrict:
            if (tau == 1) {
                r.value = h.component_count();
                r.witness_assignment.assign(m, 1);
                r.algorithm = "components";
                return r;
            }
            if (tau == 2) {
                auto s = max_d3is(h);
                r.value = s.size();
                r.witness_assignment = d3is_witness_assignment(h, s);
                r.algorithm = "d3is";
                return r;
            }
            break;
        case Variant::Happy: {
            if (tau > 2) break;
            if (!happy_assignment_exists(h, tau))
                throw InfeasibleError("no happy assignment: H is not " + std::to_string(tau) + "-edge-colourable");
            r.witness_assignment = happy_linear_assignment(h, tau);
            auto g = TemporalGraph::from_assignment(h, r.witness_assignment);
            r.value = min_tardis_special(g, Semantics::Nonstrict)->size;
            r.algorithm = "happy-linear";
            return r;
        }
    }
    if (algo == MaxMinAlgo::Shortcut)
        throw PreconditionError("no shortcut for the " + std::string(to_string(variant)) + " variant with tau " +
                                std::to_string(tau));
    return maxmin_enumerate(h, tau, variant, budget);
}

}  // namespace tardis
