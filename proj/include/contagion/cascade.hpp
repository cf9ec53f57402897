#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "contagion/balance_sheet.hpp"
#include "contagion/digraph.hpp"

namespace contagion {

// One exposure delivered to a then-alive vertex: in round `round` (0 = the
// shock itself sending), `sender` in that round's newly-defaulted set hit
// `target`. Deliveries to already-defaulted targets are never recorded;
// they cannot affect the dynamics.
struct Delivery {
    std::uint32_t round;
    Vertex sender;
    Vertex target;
};

struct CascadeTrace {
    Vertex n = 0;
    std::vector<Vertex> shock;                 // S_0, sorted
    std::vector<std::vector<Vertex>> rounds;   // new defaults per round, each sorted
    std::vector<Vertex> terminal_set;          // D_infinity, sorted
    std::vector<Delivery> deliveries;          // hit profile, in processing order
    std::vector<Vertex> multi_hit_defaults;    // defaults with no single active in-edge, sorted
    std::uint64_t round_double_hit_count = 0;  // (round, target) pairs with >= 2 senders

    std::uint64_t terminal_size() const { return terminal_set.size(); }
    bool defaulted(Vertex v) const;
    std::vector<std::uint64_t> round_sizes_with_shock() const;

    // Hits received by one vertex while still alive, grouped as
    // (round, senders-in-that-round) pairs in round order.
    std::vector<std::pair<std::uint32_t, std::vector<Vertex>>> hit_profile(Vertex v) const;
};

// Runs the default cascade to its fixed point. A live vertex defaults as
// soon as the exposures accumulated from ALL defaulted in-neighbors so far
// reach its equity; comparisons are exact rationals, recovery is zero, and
// rounds are synchronous.
CascadeTrace run_cascade(const DiGraph& g, const BalanceSheet& bs,
                         std::span<const Vertex> shock);

struct HitClassification {
    std::vector<Vertex> single_hit;   // defaults explainable by one active in-edge
    std::vector<Vertex> multi_hit;    // the rest: accumulation was necessary
    std::uint64_t round_double_hit_count = 0;
};

// Re-derives the single-hit / multi-hit split of a trace: a default outside
// the shock is single-hit iff some in-neighbor in the terminal set is active
// with out-degree >= 1 (that edge alone meets the equity).
HitClassification classify_hits(const CascadeTrace& trace, const DiGraph& g,
                                const BalanceSheet& bs);

// The systemic event: the terminal default set reaches ceil(epsilon * n).
bool is_systemic(const CascadeTrace& trace, double epsilon, Vertex n);

// JSON with stable key order: shock, rounds, terminal_size, multi_hit_ids,
// round_double_hits.
std::string trace_to_json(const CascadeTrace& trace);

} // namespace contagion
