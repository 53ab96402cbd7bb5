#pragma once

#include "tardis/core.hpp"
#include "tardis/exact.hpp"

namespace tardis {

/// Leaf-to-root marking algorithm for temporal graphs whose footprint is a
/// forest. Each component is rooted at its lowest-index vertex and solved on
/// its own. Throws PreconditionError when the footprint has a cycle.
TardisResult min_tardis_tree(const TemporalGraph& g, Semantics semantics);

}  // namespace tardis
