#include "contagion/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace contagion {

namespace {

std::vector<Vertex> sorted_unique(std::span<const Vertex> ids) {
    std::vector<Vertex> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Shared by run_cascade and classify_hits. A defaulted non-shock vertex is
// single-hit explainable iff some terminal in-neighbor is active with
// out-degree >= 1; everything else needed accumulation.
std::vector<Vertex> multi_hit_of(const std::vector<Vertex>& terminal,
                                 const std::vector<Vertex>& shock, const DiGraph& g,
                                 const BalanceSheet& bs) {
    std::vector<bool> defaulted(g.vertex_count(), false);
    for (Vertex v : terminal) defaulted[v] = true;
    std::vector<bool> explained(g.vertex_count(), false);
    for (Vertex u : terminal) {
        const Vertex d = g.out_degree(u);
        if (d >= 1 && bs.is_active(d)) {
            for (Vertex v : g.out_neighbors(u)) {
                if (defaulted[v]) explained[v] = true;
            }
        }
    }
    std::vector<Vertex> multi;
    for (Vertex v : terminal) {
        if (!explained[v] && !std::binary_search(shock.begin(), shock.end(), v)) {
            multi.push_back(v);
        }
    }
    return multi;
}

} // namespace

bool CascadeTrace::defaulted(Vertex v) const {
    return std::binary_search(terminal_set.begin(), terminal_set.end(), v);
}

std::vector<std::uint64_t> CascadeTrace::round_sizes_with_shock() const {
    std::vector<std::uint64_t> sizes;
    sizes.reserve(rounds.size() + 1);
    sizes.push_back(shock.size());
    for (const auto& round : rounds) sizes.push_back(round.size());
    return sizes;
}

std::vector<std::pair<std::uint32_t, std::vector<Vertex>>> CascadeTrace::hit_profile(
    Vertex v) const {
    std::vector<std::pair<std::uint32_t, std::vector<Vertex>>> profile;
    for (const Delivery& d : deliveries) {
        if (d.target != v) continue;
        if (profile.empty() || profile.back().first != d.round) {
            profile.push_back({d.round, {}});
        }
        profile.back().second.push_back(d.sender);
    }
    return profile;
}

CascadeTrace run_cascade(const DiGraph& g, const BalanceSheet& bs,
                         std::span<const Vertex> shock) {
    const Vertex n = g.vertex_count();
    if (shock.empty()) throw std::invalid_argument("run_cascade: shock set is empty");
    for (Vertex v : shock) {
        if (v >= n) {
            throw std::invalid_argument("run_cascade: shock vertex " + std::to_string(v) +
                                        " out of range");
        }
    }

    CascadeTrace trace;
    trace.n = n;
    trace.shock = sorted_unique(shock);

    std::vector<bool> defaulted(n, false);
    for (Vertex v : trace.shock) defaulted[v] = true;

    // Running exposure per live vertex and per-degree exposure cache; only
    // vertices that were actually hit ever materialize an entry.
    std::unordered_map<Vertex, Rational> accumulated;
    std::unordered_map<Vertex, Rational> exposure_of_degree;
    const Rational& equity = bs.equity();

    std::vector<Vertex> frontier = trace.shock;
    std::unordered_map<Vertex, std::uint32_t> hits_this_round;
    std::uint32_t round = 0;
    while (!frontier.empty()) {
        hits_this_round.clear();
        for (Vertex u : frontier) {
            const Vertex d = g.out_degree(u);
            if (d == 0) continue; // liabilities owed externally; transmits nothing
            auto [it, fresh] = exposure_of_degree.try_emplace(d);
            if (fresh) it->second = bs.edge_exposure(d);
            const Rational& w = it->second;
            for (Vertex v : g.out_neighbors(u)) {
                if (defaulted[v]) continue;
                trace.deliveries.push_back({round, u, v});
                hits_this_round[v] += 1;
                accumulated[v] += w;
            }
        }
        std::vector<Vertex> next;
        for (const auto& [v, count] : hits_this_round) {
            if (count >= 2) trace.round_double_hit_count += 1;
            if (accumulated[v] >= equity) next.push_back(v);
        }
        std::sort(next.begin(), next.end());
        for (Vertex v : next) {
            defaulted[v] = true;
            accumulated.erase(v);
        }
        if (!next.empty()) trace.rounds.push_back(next);
        frontier = std::move(next);
        ++round;
    }

    trace.terminal_set = trace.shock;
    for (const auto& r : trace.rounds) {
        trace.terminal_set.insert(trace.terminal_set.end(), r.begin(), r.end());
    }
    std::sort(trace.terminal_set.begin(), trace.terminal_set.end());
    trace.multi_hit_defaults = multi_hit_of(trace.terminal_set, trace.shock, g, bs);
    return trace;
}

HitClassification classify_hits(const CascadeTrace& trace, const DiGraph& g,
                                const BalanceSheet& bs) {
    if (trace.n != g.vertex_count()) {
        throw std::invalid_argument("classify_hits: trace does not match graph");
    }
    for (Vertex v : trace.terminal_set) {
        if (v >= trace.n) {
            throw std::invalid_argument("classify_hits: trace vertex out of range");
        }
    }
    HitClassification result;
    result.round_double_hit_count = trace.round_double_hit_count;
    result.multi_hit = multi_hit_of(trace.terminal_set, trace.shock, g, bs);
    for (Vertex v : trace.terminal_set) {
        if (!std::binary_search(trace.shock.begin(), trace.shock.end(), v) &&
            !std::binary_search(result.multi_hit.begin(), result.multi_hit.end(), v)) {
            result.single_hit.push_back(v);
        }
    }
    return result;
}

bool is_systemic(const CascadeTrace& trace, double epsilon, Vertex n) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("is_systemic: epsilon must lie in (0,1)");
    }
    // ceil(epsilon * n) with a relative nudge so that exact products such as
    // 0.1 * 10^4 do not round up from binary representation error.
    const double target = epsilon * static_cast<double>(n);
    const auto threshold = static_cast<std::uint64_t>(std::ceil(target - target * 1e-12));
    return trace.terminal_size() >= threshold;
}

std::string trace_to_json(const CascadeTrace& trace) {
    nlohmann::ordered_json j;
    j["shock"] = trace.shock;
    j["rounds"] = trace.rounds;
    j["terminal_size"] = trace.terminal_size();
    j["multi_hit_ids"] = trace.multi_hit_defaults;
    j["round_double_hits"] = trace.round_double_hit_count;
    return j.dump(2) + "\n";
}

} // namespace contagion
