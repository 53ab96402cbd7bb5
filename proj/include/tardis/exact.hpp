#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "tardis/core.hpp"
#include "tardis/reach.hpp"

namespace tardis {

struct TardisResult {
    std::size_t size = 0;
    VertexSet witness;
    std::string algorithm;
    Semantics semantics = Semantics::Nonstrict;
};

inline constexpr std::size_t kBruteforceDefaultCap = 16;

/// Subsets by increasing size, lexicographic within a size; the first TaRDiS
/// found is returned. Throws BudgetExceeded when n exceeds `max_vertices`.
TardisResult min_tardis_bruteforce(const TemporalGraph& g, Semantics semantics,
                                   std::size_t max_vertices = kBruteforceDefaultCap);

enum class SetCoverStrategy {
    BranchAndBound,
    // Enumerate subsets of the canonical candidates by size; the number of
    // weakly locally earliest edges caps the answer.
    LeeEnumeration,
};

struct SetCoverOptions {
    std::optional<VertexSet> candidates;
    SetCoverStrategy strategy = SetCoverStrategy::BranchAndBound;
};

/// Candidate vertices that always contain a minimum TaRDiS: all of V for
/// general strict graphs, otherwise endpoints of (weakly) locally earliest
/// edges together with isolated vertices.
VertexSet default_candidates(const TemporalGraph& g, Semantics semantics);

TardisResult min_tardis_setcover(const TemporalGraph& g, Semantics semantics, const SetCoverOptions& opts = {});

/// Moves every member of S onto a vertex incident to a weakly locally earliest
/// edge without losing coverage. Strict semantics requires a proper graph.
VertexSet canonicalize_tardis(const TemporalGraph& g, std::span<const Vertex> s,
                              Semantics semantics = Semantics::Nonstrict);

/// Linear cases: nonstrict with lifetime 1, and happy graphs with lifetime <= 2.
std::optional<TardisResult> min_tardis_special(const TemporalGraph& g, Semantics semantics);

/// Strict no-instance test: every strict reachability set has at most
/// max(1, 2*Delta^tau) vertices. Returns false when n exceeds k times that.
std::optional<bool> quick_reject_strict(const TemporalGraph& g, std::size_t k);

}  // namespace tardis
