#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tardis/error.hpp"
#include "tardis/exact.hpp"
#include "tardis/maxmin.hpp"

using namespace tardis;

namespace {

StaticGraph path_graph(std::size_t n) {
    StaticGraph h(n);
    for (Vertex i = 0; i + 1 < n; ++i) h.add_edge(i, i + 1);
    return h;
}

StaticGraph cycle_graph(std::size_t n) {
    auto h = path_graph(n);
    h.add_edge(0, static_cast<Vertex>(n - 1));
    return h;
}

StaticGraph star(std::size_t leaves) {
    StaticGraph h(leaves + 1);
    for (Vertex i = 1; i <= leaves; ++i) h.add_edge(0, i);
    return h;
}

StaticGraph complete(std::size_t n) {
    StaticGraph h(n);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) h.add_edge(a, b);
    return h;
}

StaticGraph petersen() {
    StaticGraph h(10);
    for (Vertex i = 0; i < 5; ++i) {
        h.add_edge(i, (i + 1) % 5);
        h.add_edge(i, i + 5);
        h.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return h;
}

std::size_t oracle(const StaticGraph& h, const std::vector<Time>& times, Semantics sem) {
    return min_tardis_bruteforce(TemporalGraph::from_assignment(h, times), sem).size;
}

std::size_t brute_gamma(const StaticGraph& h) {
    const std::size_t n = h.num_vertices();
    std::size_t best = n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::uint64_t dom = 0;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1) {
                dom |= std::uint64_t{1} << v;
                for (Vertex w : h.neighbours(v)) dom |= std::uint64_t{1} << w;
            }
        if (dom == (std::uint64_t{1} << n) - 1) best = std::min<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

std::size_t brute_d3is(const StaticGraph& h) {
    const std::size_t n = h.num_vertices();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        VertexSet s;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1) s.push_back(v);
        if (s.size() > best && is_d3is(h, s)) best = s.size();
    }
    return best;
}

bool proper(const StaticGraph& h, const std::vector<Time>& c, Time tau) {
    auto e = h.edges();
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (c[i] < 1 || c[i] > tau) return false;
        for (std::size_t j = 0; j < i; ++j) {
            bool touch = e[i].first == e[j].first || e[i].first == e[j].second || e[i].second == e[j].first ||
                         e[i].second == e[j].second;
            if (touch && c[i] == c[j]) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("maxmin examples") {
    for (Time tau = 1; tau <= 3; ++tau) {
        auto r = maxmin_value(star(3), tau, Variant::Strict);
        CHECK(r.value == 1);
        CHECK(r.algorithm == "dominating-set");
    }
    auto p4 = maxmin_value(path_graph(4), 2, Variant::Nonstrict);
    CHECK(p4.value == 2);
    CHECK(p4.algorithm == "d3is");
    CHECK(maxmin_value(path_graph(4), 2, Variant::Nonstrict, MaxMinAlgo::Enumeration).value == 2);

    StaticGraph empty(4);
    for (auto v : {Variant::Strict, Variant::Nonstrict, Variant::Happy})
        for (Time tau = 1; tau <= 3; ++tau) {
            CHECK(maxmin_value(empty, tau, v).value == 4);
            CHECK(maxmin_value(empty, tau, v, MaxMinAlgo::Enumeration).value == 4);
        }
}

TEST_CASE("variant parsing") {
    CHECK(parse_variant("happy") == Variant::Happy);
    CHECK(parse_variant("non-strict") == Variant::Nonstrict);
    CHECK_THROWS_AS(parse_variant("lazy"), PreconditionError);
    CHECK(parse_maxmin_algo("enum") == MaxMinAlgo::Enumeration);
    CHECK(to_string(Variant::Strict) == "strict");
}

TEST_CASE("max_d3is and dominating set against brute force") {
    CHECK(max_d3is(path_graph(4)) == VertexSet{0, 3});
    CHECK(max_d3is(star(3)).size() == 1);
    CHECK(max_d3is(StaticGraph(5)).size() == 5);
    CHECK(max_d3is(petersen()).size() == 1);

    std::mt19937_64 rng(61);
    for (int it = 0; it < 150; ++it) {
        std::size_t n = 1 + rng() % 11;
        auto h = testing_support::random_graph(rng, n, 0.1 + 0.05 * (rng() % 8));
        auto s = max_d3is(h);
        CHECK(is_maximal_d3is(h, s));
        CHECK(s.size() == brute_d3is(h));
        auto d = min_dominating_set(h);
        CHECK(d.size() == brute_gamma(h));
    }
}

TEST_CASE("d3is witness assignment") {
    auto p4 = path_graph(4);
    auto lam = d3is_witness_assignment(p4, VertexSet{0, 3});
    CHECK(lam == std::vector<Time>{1, 2, 1});
    CHECK(oracle(p4, lam, Semantics::Nonstrict) == 2);

    auto k2 = path_graph(2);
    CHECK(d3is_witness_assignment(k2, VertexSet{0}) == std::vector<Time>{1});

    CHECK_THROWS_AS(d3is_witness_assignment(p4, VertexSet{0, 2}), PreconditionError);
    CHECK_THROWS_AS(d3is_witness_assignment(path_graph(7), VertexSet{0}), PreconditionError);

    std::mt19937_64 rng(62);
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 1 + rng() % 8;
        auto h = testing_support::random_connected_graph(rng, n, 0.2);
        auto s = max_d3is(h);
        auto times = d3is_witness_assignment(h, s);
        auto g = TemporalGraph::from_assignment(h, times);
        CHECK(min_tardis_bruteforce(g, Semantics::Nonstrict).size == s.size());
        CHECK(is_tardis(g, s, Semantics::Nonstrict));
    }
}

TEST_CASE("extract_independent_tardis") {
    // 0-1@2, 1-2@1, 2-3@1, 0-4@1: with S = {1,4}, vertex 4 reaches 1, so 1 is
    // replaced by its closest sole-reachable vertex 2.
    auto g = parse_temporal_graph("p tg 5 4\n1 2 2\n2 3 1\n3 4 1\n1 5 1\n");
    auto c = closure(g, Semantics::Nonstrict);
    CHECK(sole_reachability_set(c, VertexSet{1, 4}, 1) == VertexSet{2, 3});
    auto out = extract_independent_tardis(g, VertexSet{1, 4});
    CHECK(out == VertexSet{2, 4});
    CHECK(is_d3is(g.footprint(), out));

    CHECK_THROWS_AS(extract_independent_tardis(g, VertexSet{0, 1, 4}), PreconditionError);
    auto t1 = parse_temporal_graph("p tg 2 1\n1 2 1\n");
    CHECK_THROWS_AS(extract_independent_tardis(t1, VertexSet{0}), PreconditionError);

    std::mt19937_64 rng(63);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        std::size_t n = 2 + rng() % 7;
        auto h = testing_support::random_connected_graph(rng, n, 0.2);
        std::vector<Time> times(h.num_edges());
        for (auto& t : times) t = 1 + rng() % 2;
        auto g2 = TemporalGraph::from_assignment(h, times);
        if (g2.lifetime() != 2) continue;
        ++checked;

        // Witness instances already are independent.
        auto s = max_d3is(h);
        auto w = TemporalGraph::from_assignment(h, d3is_witness_assignment(h, s));
        if (w.lifetime() == 2) CHECK(extract_independent_tardis(w, s) == s);

        auto best = min_tardis_bruteforce(g2, Semantics::Nonstrict).witness;
        auto ind = extract_independent_tardis(g2, best);
        CHECK(ind.size() == best.size());
        CHECK(is_tardis(g2, ind, Semantics::Nonstrict));
        CHECK(is_d3is(h, ind));
        CHECK(ind.size() <= brute_d3is(h));
        auto cc = closure(g2, Semantics::Nonstrict);
        for (Vertex x : ind) {
            auto sr = sole_reachability_set(cc, ind, x);
            CHECK(std::binary_search(sr.begin(), sr.end(), x));
        }
    }
    CHECK(checked > 150);
}

TEST_CASE("happy assignments are edge colourings") {
    CHECK_FALSE(happy_assignment_exists(complete(3), 2));
    auto k3 = happy_assignment_exists(complete(3), 3);
    REQUIRE(k3);
    CHECK(proper(complete(3), *k3, 3));
    REQUIRE(happy_assignment_exists(path_graph(4), 2));
    auto k4 = happy_assignment_exists(complete(4), 3);
    REQUIRE(k4);
    CHECK(proper(complete(4), *k4, 3));
    CHECK_FALSE(happy_assignment_exists(petersen(), 3));
    CHECK(happy_assignment_exists(petersen(), 4));

    std::mt19937_64 rng(64);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = 1 + rng() % 7;
        auto h = testing_support::random_graph(rng, n, 0.4);
        if (h.num_edges() > 10) continue;
        for (Time tau = 1; tau <= 4; ++tau) {
            auto c = happy_assignment_exists(h, tau);
            bool any = false;
            std::vector<Time> a(h.num_edges(), 1);
            for (;;) {
                if (proper(h, a, tau)) {
                    any = true;
                    break;
                }
                std::size_t i = 0;
                while (i < a.size() && a[i] == tau) a[i++] = 1;
                if (i == a.size()) break;
                ++a[i];
            }
            CHECK(c.has_value() == any);
            if (c) CHECK(proper(h, *c, tau));

            // Happy infeasibility is exactly edge-colouring infeasibility.
            if (h.num_edges() <= 8 && tau <= 3) {
                if (any) {
                    auto r = maxmin_enumerate(h, tau, Variant::Happy);
                    CHECK(r.value >= 1);
                    CHECK(proper(h, r.witness_assignment, tau));
                } else {
                    CHECK_THROWS_AS(maxmin_value(h, tau, Variant::Happy), InfeasibleError);
                }
            }
        }
    }
}

TEST_CASE("quick_reject_strict_maxmin") {
    CHECK(quick_reject_strict_maxmin(cycle_graph(20), 5) == std::optional<bool>(true));
    CHECK_FALSE(quick_reject_strict_maxmin(star(3), 2));
    CHECK(quick_reject_strict_maxmin(StaticGraph(3), 3) == std::optional<bool>(true));

    std::mt19937_64 rng(65);
    for (int it = 0; it < 100; ++it) {
        auto h = testing_support::random_graph(rng, 1 + rng() % 9, 0.3);
        for (std::size_t k = 0; k <= h.num_vertices(); ++k)
            if (quick_reject_strict_maxmin(h, k)) CHECK(brute_gamma(h) >= k);
    }
}

TEST_CASE("simple-assignment evaluator matches the oracle") {
    std::mt19937_64 rng(66);
    for (int it = 0; it < 300; ++it) {
        std::size_t n = 1 + rng() % 9;
        auto h = testing_support::random_graph(rng, n, 0.35);
        Time tau = 1 + rng() % 4;
        std::vector<Time> times(h.num_edges());
        for (auto& t : times) t = 1 + rng() % tau;
        for (auto sem : {Semantics::Strict, Semantics::Nonstrict})
            CHECK(min_tardis_size_simple(h, times, sem) == oracle(h, times, sem));
    }
}

TEST_CASE("enumeration: parallel equals serial, witness achieves value") {
    std::mt19937_64 rng(67);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 1 + rng() % 6;
        auto h = testing_support::random_graph(rng, n, 0.4);
        if (h.num_edges() > 8) continue;
        Time tau = 1 + rng() % 3;
        for (auto v : {Variant::Strict, Variant::Nonstrict}) {
            auto a = maxmin_enumerate(h, tau, v);
            auto b = maxmin_enumerate_serial(h, tau, v);
            CHECK(a.value == b.value);
            CHECK(a.witness_assignment == b.witness_assignment);
            CHECK(a.algorithm == "exact-by-enumeration");
            CHECK(oracle(h, a.witness_assignment, semantics_of(v)) == a.value);
        }
    }
}

TEST_CASE("strict value is the domination number for every tau") {
    std::mt19937_64 rng(68);
    for (int it = 0; it < 40; ++it) {
        std::size_t n = 1 + rng() % 7;
        auto h = testing_support::random_graph(rng, n, 0.35);
        if (h.num_edges() > 9) continue;
        const std::size_t g = brute_gamma(h);
        for (Time tau = 1; tau <= 3; ++tau) {
            CHECK(maxmin_enumerate(h, tau, Variant::Strict).value == g);
            CHECK(maxmin_value(h, tau, Variant::Strict).value == g);
        }
    }
}

TEST_CASE("nonstrict tau=2 value is the maximum D3IS") {
    std::mt19937_64 rng(69);
    for (int it = 0; it < 40; ++it) {
        std::size_t n = 1 + rng() % 7;
        auto h = testing_support::random_connected_graph(rng, n, 0.2);
        auto e = maxmin_enumerate(h, 2, Variant::Nonstrict);
        CHECK(e.value == max_d3is(h).size());
        auto s = maxmin_value(h, 2, Variant::Nonstrict);
        CHECK(s.value == e.value);
        CHECK(oracle(h, s.witness_assignment, Semantics::Nonstrict) == s.value);
        // tau = 1 counts components.
        CHECK(maxmin_value(h, 1, Variant::Nonstrict).value == 1);
        CHECK(maxmin_enumerate(h, 1, Variant::Nonstrict).value == 1);
    }
}

TEST_CASE("simple assignments suffice for nonstrict tau=2") {
    std::mt19937_64 rng(70);
    for (int it = 0; it < 25; ++it) {
        std::size_t n = 2 + rng() % 4;
        auto h = testing_support::random_graph(rng, n, 0.5);
        auto edges = h.edges();
        const std::size_t m = edges.size();
        // Each edge gets {1}, {2} or {1,2}.
        std::size_t best = 0;
        std::vector<int> code(m, 0);
        for (;;) {
            std::vector<TimeEdge> te;
            for (std::size_t i = 0; i < m; ++i) {
                if (code[i] != 1) te.push_back({edges[i].first, edges[i].second, 1});
                if (code[i] != 0) te.push_back({edges[i].first, edges[i].second, 2});
            }
            best = std::max(best, min_tardis_bruteforce(TemporalGraph(n, te), Semantics::Nonstrict).size);
            std::size_t i = 0;
            while (i < m && code[i] == 2) code[i++] = 0;
            if (i == m) break;
            ++code[i];
        }
        CHECK(maxmin_enumerate(h, 2, Variant::Nonstrict).value == best);
    }
}

TEST_CASE("happy tau <= 2 shortcut matches enumeration") {
    std::mt19937_64 rng(71);
    for (int it = 0; it < 80; ++it) {
        // Disjoint paths and even cycles.
        StaticGraph h(0);
        std::vector<std::pair<Vertex, Vertex>> es;
        Vertex n = 0;
        for (int comp = 0, k = 1 + rng() % 3; comp < k; ++comp) {
            std::size_t len = 1 + rng() % 6;
            bool cyc = rng() % 3 == 0 && len >= 4 && len % 2 == 0;
            for (Vertex i = 0; i + 1 < len; ++i) es.push_back({n + i, n + i + 1});
            if (cyc) es.push_back({n, static_cast<Vertex>(n + len - 1)});
            n += static_cast<Vertex>(len);
        }
        h = StaticGraph(n, es);
        for (Time tau = 1; tau <= 2; ++tau) {
            if (!happy_assignment_exists(h, tau)) {
                CHECK_THROWS_AS(maxmin_value(h, tau, Variant::Happy), InfeasibleError);
                continue;
            }
            auto s = maxmin_value(h, tau, Variant::Happy);
            CHECK(s.algorithm == "happy-linear");
            CHECK(proper(h, s.witness_assignment, tau));
            CHECK(s.value == maxmin_enumerate(h, tau, Variant::Happy).value);
            CHECK(oracle(h, s.witness_assignment, Semantics::Strict) == s.value);
        }
    }
    // Odd path: both leaf edges at time 1.
    auto r = maxmin_value(path_graph(6), 2, Variant::Happy);
    CHECK(r.witness_assignment == std::vector<Time>{1, 2, 1, 2, 1});
    CHECK_THROWS_AS(maxmin_value(cycle_graph(5), 2, Variant::Happy), InfeasibleError);
}

TEST_CASE("budgets and shortcut availability") {
    auto k6 = complete(6);
    CHECK_THROWS_AS(maxmin_enumerate(k6, 3, Variant::Nonstrict, 1e6), BudgetExceeded);
    CHECK_THROWS_AS(maxmin_value(k6, 3, Variant::Nonstrict, MaxMinAlgo::Shortcut), PreconditionError);
    CHECK_THROWS_AS(maxmin_value(k6, 3, Variant::Happy, MaxMinAlgo::Shortcut), PreconditionError);
    CHECK(maxmin_value(k6, 3, Variant::Strict, MaxMinAlgo::Shortcut).value == 1);
}

TEST_CASE("early-exit search") {
    auto p4 = path_graph(4);
    auto a = find_assignment_with_min_at_least(p4, 2, Semantics::Nonstrict, 2);
    REQUIRE(a);
    CHECK(oracle(p4, *a, Semantics::Nonstrict) >= 2);
    CHECK_FALSE(find_assignment_with_min_at_least(p4, 2, Semantics::Nonstrict, 3));
}
