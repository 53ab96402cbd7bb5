#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tardis/core.hpp"

namespace tardis {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

// Arrival value for vertices no admissible path reaches.
inline constexpr Time kUnreachable = std::numeric_limits<Time>::max();

struct ForemostTable {
    Vertex source = 0;
    std::optional<Time> depart_after;
    Semantics semantics = Semantics::Nonstrict;
    std::vector<Time> arrival;

    bool reachable(Vertex v) const { return arrival[v] != kUnreachable; }
};

/// Earliest arrival at every vertex over temporal paths from `source` whose
/// first time-edge is at a time after `depart_after` (> for strict, >= for
/// nonstrict). Without a departure bound the source arrives at time 0; with
/// one the source itself is reported unreachable.
ForemostTable foremost_arrivals(const TemporalGraph& g, Vertex source, std::optional<Time> depart_after,
                                Semantics semantics);

VertexSet reach_set(const TemporalGraph& g, Vertex source, Semantics semantics);
Bitset reach_bits(const TemporalGraph& g, Vertex source, Semantics semantics);

/// Row u holds R_u.
class ReachClosure {
public:
    ReachClosure() = default;
    explicit ReachClosure(std::vector<Bitset> rows) : rows_(std::move(rows)) {}

    std::size_t size() const noexcept { return rows_.size(); }
    const Bitset& row(Vertex u) const { return rows_[u]; }
    bool reaches(Vertex u, Vertex v) const { return rows_[u].test(v); }
    const std::vector<Bitset>& rows() const noexcept { return rows_; }

    /// Columns: col(v) = { u : v in R_u }.
    std::vector<Bitset> transpose() const;

    friend bool operator==(const ReachClosure&, const ReachClosure&) = default;

private:
    std::vector<Bitset> rows_;
};

/// Rows are computed in parallel when OpenMP is available.
ReachClosure closure(const TemporalGraph& g, Semantics semantics);
ReachClosure closure_serial(const TemporalGraph& g, Semantics semantics);

bool is_tardis(const TemporalGraph& g, std::span<const Vertex> s, Semantics semantics);
bool is_tardis(const ReachClosure& c, std::span<const Vertex> s);

/// SR(S, x): vertices reached from x and from no other member of S.
VertexSet sole_reachability_set(const ReachClosure& c, std::span<const Vertex> s, Vertex x);

}  // namespace tardis
