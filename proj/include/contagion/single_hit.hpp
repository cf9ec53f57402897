#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "contagion/digraph.hpp"

namespace contagion {

// Sender truncation: keep all out-edges of u iff out_degree(u) <= d_star in
// the ORIGINAL graph, otherwise none. Activity is never re-judged on the
// truncated graph's own degrees.
DiGraph build_single_hit(const DiGraph& g, std::uint64_t d_star);

// Vertices reachable from `sources` by directed paths, sources included.
// Returned in BFS discovery order (sources first, in the given order after
// deduplication), so exploration-size experiments can replay the frontier.
// Explicit queue plus a visited bitmap; O(n) bits, O(n + edges) time.
std::vector<Vertex> forward_reach(const DiGraph& g, std::span<const Vertex> sources);

// Out-degree law of the truncated graph: K = B * 1{B <= d_star} for
// B ~ Binomial(n-1, lambda/n). Truncated mass lands on the atom at 0.
class TruncatedOutdegreeLaw {
public:
    TruncatedOutdegreeLaw(Vertex n, double lambda, std::uint64_t d_star);

    Vertex sample(std::mt19937_64& rng) const;
    Vertex operator()(std::mt19937_64& rng) const { return sample(rng); }

    // Exact pmf on {0, ..., min(d_star, n-1)}; zero above.
    double pmf(std::uint64_t k) const;
    double mean() const { return mean_; }

    Vertex n() const { return n_; }
    double lambda() const { return lambda_; }
    std::uint64_t d_star() const { return d_star_; }
    std::uint64_t max_degree() const { return pmf_.size() - 1; }

    DegreeSampler sampler() const;

private:
    Vertex n_;
    double lambda_;
    std::uint64_t d_star_;
    std::vector<double> pmf_;
    double mean_;
};

inline TruncatedOutdegreeLaw truncated_outdegree_sampler(Vertex n, double lambda,
                                                         std::uint64_t d_star) {
    return TruncatedOutdegreeLaw(n, lambda, d_star);
}

} // namespace contagion
