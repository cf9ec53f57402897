#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contagion/digraph.hpp"

namespace contagion {

struct SccDecomposition {
    // component_of[v] numbers components in reverse topological order of the
    // condensation (a component is finished only after everything it reaches).
    std::vector<Vertex> component_of;
    std::vector<Vertex> component_sizes;
    Vertex component_count() const { return static_cast<Vertex>(component_sizes.size()); }
};

// Iterative single-pass lowlink SCC (explicit stacks, no recursion); safe at
// n = 10^6 where recursive DFS would overflow.
SccDecomposition scc_decompose(const DiGraph& g);

struct BowTie {
    SccDecomposition scc;
    std::vector<Vertex> largest_scc;  // the core, sorted
    std::vector<Vertex> in_set;       // reaches the core; includes it
    std::vector<Vertex> out_set;      // reachable from the core; includes it
    double in_frac = 0.0;
    double out_frac = 0.0;
    double scc_frac = 0.0;
};

// Largest SCC by cardinality (ties: smallest minimum vertex id), plus the
// vertices reaching it and reachable from it. IN and OUT include the core.
BowTie bowtie_extract(const DiGraph& g);

// JSON summary: n, scc_size, in_size, out_size, in_frac, out_frac, scc_frac.
std::string bowtie_to_json(const BowTie& bt, Vertex n);

} // namespace contagion
