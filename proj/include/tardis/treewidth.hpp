#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tardis/core.hpp"
#include "tardis/exact.hpp"

namespace tardis {

struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // bag-tree edges

    /// Largest bag size minus one; -1 for a decomposition without vertices.
    long width() const;
};

/// Returns a description of the first violated condition, or nullopt.
std::optional<std::string> validate_tree_decomposition(const StaticGraph& h, const TreeDecomposition& td);

/// Elimination-order decomposition: exact width for n <= 12 (or when a
/// width_hint <= 3 is given and can be met), min-fill otherwise.
TreeDecomposition compute_tree_decomposition(const StaticGraph& h, std::optional<std::size_t> width_hint = {});

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    Vertex vertex = 0;  // introduced or forgotten vertex
    VertexSet bag;
    std::vector<std::size_t> children;
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    std::size_t root = 0;

    long width() const;
};

/// Throws PreconditionError naming the violated condition when `td` is not a
/// valid decomposition of `h`.
NiceTreeDecomposition make_nice(const StaticGraph& h, const TreeDecomposition& td);

/// Empty root and leaves, one-vertex introduce/forget steps, join children
/// with the parent's bag, plus the decomposition conditions for `h`.
std::optional<std::string> validate_nice(const StaticGraph& h, const NiceTreeDecomposition& ntd);

// ---- PACE formats -------------------------------------------------------

StaticGraph parse_gr(std::istream& in);
StaticGraph read_gr(const std::string& path);
std::string write_gr(const StaticGraph& h);
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition read_td(const std::string& path);
std::string write_td(const TreeDecomposition& td, std::size_t n);

// ---- dynamic program ----------------------------------------------------

/// Labelling of the bag vertices of one node. arrival[i] is the foremost
/// arrival time of bag vertex i (0 = in the partial TaRDiS). Vertices with
/// equal arrival joined by edges at that time form a block; a block is
/// anchored once some member is reached from an earlier vertex.
struct DPState {
    std::vector<Time> arrival;
    std::vector<std::uint8_t> block;     // canonical ids in first-occurrence order
    std::vector<std::uint8_t> anchored;  // indexed by block id

    friend bool operator==(const DPState&, const DPState&) = default;
};

struct SignatureTable {
    // Per node, finite-cost states sorted by encoding.
    std::vector<std::vector<std::pair<DPState, std::size_t>>> nodes;
    std::size_t root_cost = 0;
};

inline constexpr double kDefaultStateBudget = 1e7;

/// (tau+2)^(2(width+1)), the per-node state-count estimate used for budgeting.
double dp_state_estimate(Time tau, long width);
/// TARDIS_BUDGET_STATES when set, else kDefaultStateBudget.
double dp_state_budget();

SignatureTable dp_signature(const TemporalGraph& g, Semantics semantics, const NiceTreeDecomposition& ntd);

/// Computes a decomposition when none is given. Throws BudgetExceeded when
/// the state estimate exceeds dp_state_budget().
TardisResult min_tardis_treewidth(const TemporalGraph& g, Semantics semantics,
                                  const std::optional<NiceTreeDecomposition>& ntd = std::nullopt);

}  // namespace tardis
