#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tardis/reach.hpp"

namespace tardis {

/// Exact minimum set cover by branch-and-bound. Returns indices of the chosen
/// sets in increasing order, or nullopt when the union misses an element.
/// Lower bound: elements whose covering sets are pairwise disjoint.
std::optional<std::vector<std::size_t>> min_set_cover(const std::vector<Bitset>& sets, std::size_t universe);

/// Greedy cover (largest gain first, lowest index on ties).
std::optional<std::vector<std::size_t>> greedy_set_cover(const std::vector<Bitset>& sets, std::size_t universe);

}  // namespace tardis
