#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tardis/error.hpp"

namespace tardis {

// Dense 0-based vertex index. The wire formats are 1-based.
using Vertex = std::uint32_t;
// Discrete timestep; valid time-edges have t >= 1.
using Time = std::uint32_t;
// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

enum class Semantics { Strict, Nonstrict };

std::string_view to_string(Semantics s);
Semantics parse_semantics(std::string_view text);

struct TimeEdge {
    Vertex u = 0;
    Vertex v = 0;
    Time t = 0;

    friend auto operator<=>(const TimeEdge&, const TimeEdge&) = default;
};

/// Undirected simple graph with sorted adjacency lists.
class StaticGraph {
public:
    StaticGraph() = default;
    explicit StaticGraph(std::size_t n) : adj_(n) {}
    StaticGraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    /// Adds {u,v}; duplicates are ignored, self-loops rejected.
    void add_edge(Vertex u, Vertex v);

    std::size_t num_vertices() const noexcept { return adj_.size(); }
    std::size_t num_edges() const noexcept { return num_edges_; }
    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    bool adjacent(Vertex u, Vertex v) const;
    std::size_t max_degree() const noexcept;

    /// All edges as (u,v) with u < v, lexicographically sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Component id per vertex, ids assigned in order of lowest member.
    std::vector<std::size_t> component_ids() const;
    std::size_t component_count() const;
    bool is_forest() const;

    /// Unweighted distances from `source`; unreachable vertices get SIZE_MAX.
    std::vector<std::size_t> distances_from(Vertex source) const;

    /// Square graph: u~v iff 1 <= d(u,v) <= 2.
    StaticGraph square() const;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t num_edges_ = 0;
};

struct FootprintEdge {
    Vertex u = 0;  // u < v
    Vertex v = 0;
    std::vector<Time> times;  // strictly increasing, nonempty
};

/// Immutable temporal graph. Time-edges are kept both per footprint edge and
/// globally sorted by time so reachability can sweep snapshots in order.
class TemporalGraph {
public:
    TemporalGraph() = default;

    /// Throws PreconditionError on self-loops, t < 1, out-of-range endpoints
    /// or duplicate time-edges.
    TemporalGraph(std::size_t n, std::vector<TimeEdge> time_edges);

    /// (H, lambda) for a simple assignment: times[i] is the time of H.edges()[i].
    static TemporalGraph from_assignment(const StaticGraph& h, std::span<const Time> times);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_time_edges() const noexcept { return time_edges_.size(); }
    /// Largest time label; 0 for a graph without time-edges.
    Time lifetime() const noexcept { return lifetime_; }

    const std::vector<FootprintEdge>& edges() const noexcept { return edges_; }
    /// Sorted by (t, u, v).
    const std::vector<TimeEdge>& time_edges() const noexcept { return time_edges_; }
    /// Time-edges active at t (empty span for empty snapshots).
    std::span<const TimeEdge> snapshot(Time t) const;

    /// (time, neighbour) pairs incident to v, sorted by time then neighbour.
    const std::vector<std::pair<Time, Vertex>>& incidences(Vertex v) const { return inc_[v]; }
    /// Footprint edge indices incident to v.
    const std::vector<std::size_t>& incident_edges(Vertex v) const { return inc_edges_[v]; }
    std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;

    StaticGraph footprint() const;

private:
    std::size_t n_ = 0;
    Time lifetime_ = 0;
    std::vector<FootprintEdge> edges_;
    std::vector<TimeEdge> time_edges_;
    std::vector<std::size_t> snapshot_begin_;  // size lifetime_+2, indexed by t
    std::vector<std::vector<std::pair<Time, Vertex>>> inc_;
    std::vector<std::vector<std::size_t>> inc_edges_;
};

struct GraphClass {
    bool simple = true;
    bool proper = true;
    bool happy = true;
    std::size_t max_degree = 0;
    std::size_t component_count = 0;
};

GraphClass classify(const TemporalGraph& g);

inline StaticGraph footprint(const TemporalGraph& g) { return g.footprint(); }

struct LocallyEarliest {
    std::vector<TimeEdge> time_edges;  // sorted by (t, u, v)
    VertexSet endpoints;
};

/// Time-edges ((u,v),t) such that every other time-edge touching u or v is
/// at a time > t, or >= t when `weak` is set.
LocallyEarliest locally_earliest_edges(const TemporalGraph& g, bool weak);

// ---- .tg format ---------------------------------------------------------

TemporalGraph parse_temporal_graph(std::istream& in);
TemporalGraph parse_temporal_graph(std::string_view text);
TemporalGraph read_temporal_graph(const std::string& path);
/// Canonical form: header, then time-edges sorted by (u, v, t), 1-based.
std::string serialize(const TemporalGraph& g);

// ---- small helpers shared across modules --------------------------------

/// Sorts and deduplicates; throws PreconditionError on out-of-range members.
VertexSet normalize_set(std::span<const Vertex> s, std::size_t n);

}  // namespace tardis
