#include "contagion/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace contagion {

namespace {

std::uint32_t shock_mask_of(std::span<const Vertex> shock, Vertex n) {
    if (shock.empty()) throw std::invalid_argument("oracle: shock set is empty");
    std::uint32_t mask = 0;
    for (Vertex v : shock) {
        if (v >= n) throw std::invalid_argument("oracle: shock vertex out of range");
        mask |= 1u << v;
    }
    return mask;
}

std::vector<std::vector<std::pair<Vertex, Rational>>> weighted_in_lists(const DiGraph& g,
                                                                        const BalanceSheet& bs) {
    std::vector<std::vector<std::pair<Vertex, Rational>>> in_weights(g.vertex_count());
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        const Vertex d = g.out_degree(u);
        if (d == 0) continue;
        const Rational w = bs.edge_exposure(d);
        for (Vertex v : g.out_neighbors(u)) in_weights[v].emplace_back(u, w);
    }
    return in_weights;
}

} // namespace

std::vector<Vertex> brute_force_terminal_set(const DiGraph& g, const BalanceSheet& bs,
                                             std::span<const Vertex> shock) {
    const Vertex n = g.vertex_count();
    if (n > 24) throw std::invalid_argument("brute_force_terminal_set: n too large");
    const std::uint32_t shock_mask = shock_mask_of(shock, n);
    const auto in_weights = weighted_in_lists(g, bs);
    const Rational& equity = bs.equity();

    // Precompute, per vertex, whether each subset of its in-neighborhood
    // meets the equity; candidate-set checks then stay in integer land.
    std::vector<std::vector<bool>> meets(n);
    std::vector<std::uint32_t> in_mask(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto& senders = in_weights[v];
        for (const auto& [u, w] : senders) in_mask[v] |= 1u << u;
        meets[v].resize(std::size_t{1} << senders.size());
        for (std::uint32_t sub = 0; sub < meets[v].size(); ++sub) {
            Rational sum = 0;
            for (std::size_t i = 0; i < senders.size(); ++i) {
                if (sub & (1u << i)) sum += senders[i].second;
            }
            meets[v][sub] = sum >= equity;
        }
    }
    auto meets_from = [&](Vertex v, std::uint32_t mask) {
        std::uint32_t sub = 0;
        for (std::size_t i = 0; i < in_weights[v].size(); ++i) {
            if (mask & (1u << in_weights[v][i].first)) sub |= 1u << i;
        }
        return static_cast<bool>(meets[v][sub]);
    };

    const std::uint32_t free_bits = ((1u << n) - 1u) & ~shock_mask;
    std::uint32_t best = 0;
    bool found = false;
    // Enumerate every superset of the shock.
    std::uint32_t extra = 0;
    while (true) {
        const std::uint32_t mask = shock_mask | extra;
        bool valid = true;
        for (Vertex v = 0; v < n && valid; ++v) {
            const bool in_set = mask & (1u << v);
            const bool in_shock = shock_mask & (1u << v);
            if (in_set && !in_shock) {
                valid = meets_from(v, mask & ~(1u << v));
            } else if (!in_set) {
                valid = !meets_from(v, mask);
            }
        }
        if (valid && (!found || std::popcount(mask) < std::popcount(best))) {
            best = mask;
            found = true;
        }
        if (extra == free_bits) break;
        extra = (extra - free_bits) & free_bits; // next subset of free_bits
    }
    if (!found) throw std::logic_error("brute_force_terminal_set: no fixed point found");

    std::vector<Vertex> terminal;
    for (Vertex v = 0; v < n; ++v) {
        if (best & (1u << v)) terminal.push_back(v);
    }
    return terminal;
}

bool verify_fixed_point(const DiGraph& g, const BalanceSheet& bs, const CascadeTrace& trace) {
    const auto in_weights = weighted_in_lists(g, bs);
    const Rational& equity = bs.equity();
    std::vector<bool> in_terminal(g.vertex_count(), false);
    for (Vertex v : trace.terminal_set) in_terminal[v] = true;

    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        Rational sum = 0;
        for (const auto& [u, w] : in_weights[v]) {
            if (in_terminal[u] && u != v) sum += w;
        }
        const bool shocked = std::binary_search(trace.shock.begin(), trace.shock.end(), v);
        if (in_terminal[v] && !shocked && !(sum >= equity)) return false;
        if (!in_terminal[v] && sum >= equity) return false;
    }
    return true;
}

std::vector<Vertex> async_random_order_terminal(const DiGraph& g, const BalanceSheet& bs,
                                                std::span<const Vertex> shock,
                                                std::mt19937_64& rng) {
    const Vertex n = g.vertex_count();
    const auto in_weights = weighted_in_lists(g, bs);
    const Rational& equity = bs.equity();
    std::vector<bool> defaulted(n, false);
    for (Vertex v : shock) {
        if (v >= n) throw std::invalid_argument("oracle: shock vertex out of range");
        defaulted[v] = true;
    }

    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    bool changed = true;
    while (changed) {
        changed = false;
        std::shuffle(order.begin(), order.end(), rng);
        for (Vertex v : order) {
            if (defaulted[v]) continue;
            Rational sum = 0;
            for (const auto& [u, w] : in_weights[v]) {
                if (defaulted[u]) sum += w;
            }
            if (sum >= equity) {
                defaulted[v] = true;
                changed = true;
            }
        }
    }
    std::vector<Vertex> terminal;
    for (Vertex v = 0; v < n; ++v) {
        if (defaulted[v]) terminal.push_back(v);
    }
    return terminal;
}

std::vector<Vertex> brute_force_scc_labels(const DiGraph& g) {
    const Vertex n = g.vertex_count();
    if (n > 64) throw std::invalid_argument("brute_force_scc_labels: n too large");
    std::vector<std::uint64_t> reach(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        reach[v] = std::uint64_t{1} << v;
        for (Vertex w : g.out_neighbors(v)) reach[v] |= std::uint64_t{1} << w;
    }
    for (Vertex k = 0; k < n; ++k) {
        for (Vertex v = 0; v < n; ++v) {
            if (reach[v] & (std::uint64_t{1} << k)) reach[v] |= reach[k];
        }
    }
    constexpr Vertex unset = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> label(n, unset);
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (label[v] != unset) continue;
        for (Vertex w = v; w < n; ++w) {
            const bool mutual = (reach[v] & (std::uint64_t{1} << w)) &&
                                (reach[w] & (std::uint64_t{1} << v));
            if (mutual) label[w] = next;
        }
        ++next;
    }
    return label;
}

} // namespace contagion
