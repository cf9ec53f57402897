#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "contagion/balance_sheet.hpp"
#include "contagion/cascade.hpp"
#include "contagion/digraph.hpp"

namespace contagion {

// Independent small-instance oracles. None of these share logic with the
// round-based engine in cascade.cpp; they exist to check it.

// Minimal fixed point by exhaustive iteration over all 2^n candidate sets:
// the smallest superset T of the shock such that every member outside the
// shock is justified by T and no outsider is triggered by T. Requires
// n <= 24.
std::vector<Vertex> brute_force_terminal_set(const DiGraph& g, const BalanceSheet& bs,
                                             std::span<const Vertex> shock);

// Checks the two-sided fixed-point conditions of a trace: every defaulted
// non-shock vertex meets its equity from terminal in-neighbors, and every
// survivor fails to.
bool verify_fixed_point(const DiGraph& g, const BalanceSheet& bs, const CascadeTrace& trace);

// Asynchronous fixed-point iteration defaulting one eligible vertex at a
// time in random order. Order independence of the terminal set is a
// consequence of monotonicity, which this exercises.
std::vector<Vertex> async_random_order_terminal(const DiGraph& g, const BalanceSheet& bs,
                                                std::span<const Vertex> shock,
                                                std::mt19937_64& rng);

// SCC labels from the transitive closure (Floyd-Warshall style reachability);
// labels numbered by smallest member vertex order. Requires n <= 64.
std::vector<Vertex> brute_force_scc_labels(const DiGraph& g);

} // namespace contagion
