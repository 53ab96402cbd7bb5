#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tardis/core.hpp"

namespace tardis {

struct ReducedInstance {
    TemporalGraph graph;
    std::size_t k = 0;
    std::vector<std::string> names;  // one per vertex
};

struct SetCoverInstance {
    std::size_t universe = 0;
    std::vector<std::vector<std::size_t>> sets;  // 0-based elements
    std::size_t k = 0;
};

/// Throws PreconditionError for an empty family, an element outside the
/// universe, or an element no set contains.
void validate(const SetCoverInstance& inst);
/// Smallest cover size by exhaustive search (at most 20 sets), nullopt when infeasible.
std::optional<std::size_t> set_cover_bruteforce(const SetCoverInstance& inst);

/// Literals are +-(i+1) for variable i. Clauses hold 2 or 3 distinct variables.
struct CnfFormula3B {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

/// Every variable exactly three times, every literal at most twice.
std::vector<std::string> violations(const CnfFormula3B& f);
void validate(const CnfFormula3B& f);
/// DIMACS "p cnf" input; the result is not validated.
CnfFormula3B parse_dimacs(std::istream& in);
std::string write_dimacs(const CnfFormula3B& f);
std::optional<std::vector<bool>> satisfying_assignment(const CnfFormula3B& f);
/// n 3-clauses over n variables with random signs (n >= 3).
CnfFormula3B random_3bounded_formula(std::size_t n, std::uint64_t seed);

/// Edges of G at time 1, plus a path of tau-1 edges hanging off vertex 0 with
/// times 2..tau. Strict TaRDiS of size k iff a dominating set of size k.
ReducedInstance ds_to_strict_tardis(const StaticGraph& g, std::size_t k, Time tau);

/// Vertices: elements, sets, then one a-vertex per incidence. Lifetime 2.
ReducedInstance setcover_to_nonstrict(const SetCoverInstance& inst);

/// Same vertices; the time-1 paths, the set chain and the time-2 paths become
/// cliques, every edge at its own time (time-1 cliques first).
ReducedInstance setcover_to_happy(const SetCoverInstance& inst);

/// Happy graph of lifetime 3 with 8n + 12m vertices and k = 2m + 2n;
/// satisfiable iff min TaRDiS <= k.
ReducedInstance sat_to_happy_tardis(const CnfFormula3B& f);

}  // namespace tardis
