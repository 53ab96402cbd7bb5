#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tardis/core.hpp"

using namespace tardis;

TEST_CASE("parse smallest graph") {
    auto g = parse_temporal_graph("p tg 2 1\n1 2 1\n");
    CHECK(g.num_vertices() == 2);
    CHECK(g.lifetime() == 1);
    CHECK(g.num_time_edges() == 1);
}

TEST_CASE("parse transcribes 1-based edges") {
    auto g = parse_temporal_graph("c a comment\np tg 3 2\n1 2 2\n2 3 1\n");
    CHECK(g.lifetime() == 2);
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
    CHECK(g.edges()[0].times == std::vector<Time>{2});
    CHECK(g.edges()[1].u == 1);
    CHECK(g.edges()[1].v == 2);
    CHECK(g.edges()[1].times == std::vector<Time>{1});
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_temporal_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("p tg 2 1\n1 1 1\n") == 2);
    CHECK(line_of("p tg 2 2\n1 2 1\n2 1 1\n") == 3);
    CHECK(line_of("p tg 2 1\n1 2 0\n") == 2);
    CHECK(line_of("p tg 2 1\n1 3 1\n") == 2);
    CHECK(line_of("p tg 2 1\n1 2\n") == 2);
    CHECK(line_of("p tg 2 1\nx 2 1\n") == 2);
    CHECK(line_of("1 2 1\n") == 1);
    CHECK(line_of("c only\n") == 1);
    CHECK(line_of("p tg 2 2\n1 2 1\n") == 2);
    CHECK(line_of("p tg 2 1\np tg 2 1\n") == 2);
}

TEST_CASE("classify examples") {
    auto one = parse_temporal_graph("p tg 2 1\n1 2 1\n");
    auto c = classify(one);
    CHECK(c.simple);
    CHECK(c.proper);
    CHECK(c.happy);

    auto path = parse_temporal_graph("p tg 3 2\n1 2 1\n2 3 1\n");
    c = classify(path);
    CHECK(c.simple);
    CHECK_FALSE(c.proper);
    CHECK_FALSE(c.happy);
    CHECK(c.max_degree == 2);
    CHECK(c.component_count == 1);

    auto twice = parse_temporal_graph("p tg 2 2\n1 2 1\n1 2 2\n");
    c = classify(twice);
    CHECK_FALSE(c.simple);
    CHECK(c.proper);
    CHECK_FALSE(c.happy);
}

TEST_CASE("footprint") {
    auto g = parse_temporal_graph("p tg 3 2\n1 2 1\n1 2 2\n");
    auto h = footprint(g);
    CHECK(h.num_edges() == 1);
    CHECK(h.adjacent(0, 1));
    CHECK(footprint(TemporalGraph(4, {})).num_edges() == 0);
    CHECK(TemporalGraph(4, {}).lifetime() == 0);
}

TEST_CASE("locally earliest edges") {
    auto single = parse_temporal_graph("p tg 2 1\n1 2 1\n");
    CHECK(locally_earliest_edges(single, true).time_edges.size() == 1);
    CHECK(locally_earliest_edges(single, false).time_edges.size() == 1);

    // u-v@2, v-w@1
    auto path = parse_temporal_graph("p tg 3 2\n1 2 2\n2 3 1\n");
    auto w = locally_earliest_edges(path, true);
    REQUIRE(w.time_edges.size() == 1);
    CHECK(w.time_edges[0] == TimeEdge{1, 2, 1});
    CHECK(w.endpoints == VertexSet{1, 2});

    auto star = parse_temporal_graph("p tg 4 3\n1 2 1\n1 3 1\n1 4 1\n");
    CHECK(locally_earliest_edges(star, true).time_edges.size() == 3);
    CHECK(locally_earliest_edges(star, false).time_edges.empty());

    // The same edge at two times: only the earlier appearance qualifies.
    auto rep = parse_temporal_graph("p tg 2 2\n1 2 1\n1 2 3\n");
    CHECK(locally_earliest_edges(rep, false).time_edges.size() == 1);
}

TEST_CASE("property: strict LEE subset of weak LEE; equal on proper graphs") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        auto g = testing_support::random_temporal(rng, 2 + rng() % 8, 0.4, 1 + rng() % 4, 2);
        auto s = locally_earliest_edges(g, false).time_edges;
        auto w = locally_earliest_edges(g, true).time_edges;
        CHECK(std::includes(w.begin(), w.end(), s.begin(), s.end(), [](const TimeEdge& a, const TimeEdge& b) {
            return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
        }));
        if (classify(g).proper) CHECK(s == w);
    }
}

TEST_CASE("property: serialize round-trip and relabel invariance of classify") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = 1 + rng() % 9;
        auto g = testing_support::random_temporal(rng, n, 0.5, 1 + rng() % 4, 3);
        auto text = serialize(g);
        auto back = parse_temporal_graph(text);
        CHECK(serialize(back) == text);

        std::vector<Vertex> perm(n);
        for (Vertex i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<TimeEdge> te;
        for (auto e : g.time_edges()) te.push_back({perm[e.u], perm[e.v], e.t});
        TemporalGraph r(n, te);
        auto a = classify(g), b = classify(r);
        CHECK(a.simple == b.simple);
        CHECK(a.proper == b.proper);
        CHECK(a.happy == b.happy);
        CHECK(a.happy == (a.simple && a.proper));
        CHECK(a.max_degree == b.max_degree);
        CHECK(a.component_count == b.component_count);
    }
}

TEST_CASE("constructor rejects invalid time-edges") {
    CHECK_THROWS_AS(TemporalGraph(2, {{0, 0, 1}}), PreconditionError);
    CHECK_THROWS_AS(TemporalGraph(2, {{0, 1, 0}}), PreconditionError);
    CHECK_THROWS_AS(TemporalGraph(2, {{0, 2, 1}}), PreconditionError);
    CHECK_THROWS_AS(TemporalGraph(2, {{0, 1, 1}, {1, 0, 1}}), PreconditionError);
}

TEST_CASE("static graph helpers") {
    StaticGraph p4(4);
    p4.add_edge(0, 1);
    p4.add_edge(1, 2);
    p4.add_edge(2, 3);
    CHECK(p4.is_forest());
    CHECK(p4.square().num_edges() == 5);
    CHECK(p4.distances_from(0)[3] == 3);
    p4.add_edge(3, 0);
    CHECK_FALSE(p4.is_forest());
}
