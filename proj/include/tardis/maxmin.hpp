#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tardis/core.hpp"

namespace tardis {

enum class Variant { Strict, Nonstrict, Happy };
std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);
/// Happy graphs are evaluated with nonstrict semantics (both coincide there).
Semantics semantics_of(Variant v);

enum class MaxMinAlgo { Auto, Enumeration, Shortcut };
MaxMinAlgo parse_maxmin_algo(std::string_view text);

struct MaxMinResult {
    std::size_t value = 0;
    std::vector<Time> witness_assignment;  // one time per edge of H, in H.edges() order
    Variant variant = Variant::Nonstrict;
    Time tau = 1;
    std::string algorithm;
};

inline constexpr double kDefaultEnumerationBudget = 5e7;

/// Throws InfeasibleError for the happy variant when H has no proper
/// tau-edge-colouring, BudgetExceeded when enumeration would exceed `budget`
/// assignments, and PreconditionError when algo is Shortcut and none applies.
MaxMinResult maxmin_value(const StaticGraph& h, Time tau, Variant variant, MaxMinAlgo algo = MaxMinAlgo::Auto,
                          double budget = kDefaultEnumerationBudget);

/// Lexicographic enumeration (first edge most significant, times ascending);
/// the first maximizer wins. Parallel over assignments.
MaxMinResult maxmin_enumerate(const StaticGraph& h, Time tau, Variant variant,
                              double budget = kDefaultEnumerationBudget);
MaxMinResult maxmin_enumerate_serial(const StaticGraph& h, Time tau, Variant variant,
                                     double budget = kDefaultEnumerationBudget);

/// First simple assignment (lexicographic) whose minimum TaRDiS under
/// `semantics` is at least `target`.
std::optional<std::vector<Time>> find_assignment_with_min_at_least(const StaticGraph& h, Time tau,
                                                                   Semantics semantics, std::size_t target,
                                                                   double budget = 1e9);

/// Minimum TaRDiS size of a simple assignment on a graph with at most 64
/// vertices. Bitmask sweep plus iterative-deepening cover.
std::size_t min_tardis_size_simple(const StaticGraph& h, std::span<const Time> times, Semantics semantics);

VertexSet min_dominating_set(const StaticGraph& h);

/// Maximum set of vertices pairwise at distance >= 3: a maximum independent
/// set of H squared.
VertexSet max_d3is(const StaticGraph& h);

bool is_d3is(const StaticGraph& h, std::span<const Vertex> s);
bool is_maximal_d3is(const StaticGraph& h, std::span<const Vertex> s);

/// lambda(e) = 1 when e touches S, 2 otherwise. Requires S to be a maximal D3IS.
std::vector<Time> d3is_witness_assignment(const StaticGraph& h, std::span<const Vertex> s);

/// Rewrites a minimum nonstrict TaRDiS of a lifetime-2 graph into one whose
/// members lie in their own sole reachability sets.
VertexSet extract_independent_tardis(const TemporalGraph& g, std::span<const Vertex> s);

/// Proper tau-edge-colouring by backtracking (most constrained edge first).
std::optional<std::vector<Time>> happy_assignment_exists(const StaticGraph& h, Time tau);

/// True when n > (k-1)(Delta+1), which forces gamma(H) >= k.
std::optional<bool> quick_reject_strict_maxmin(const StaticGraph& h, std::size_t k);

}  // namespace tardis
