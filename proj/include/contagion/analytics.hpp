#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace contagion {

// P(Poisson(lambda) <= k); 0 for k = -1 (empty sum).
double poisson_cdf(double lambda, std::int64_t k);

// Offspring mean of the truncated out-degree law in the sparse limit:
// rho_out = lambda * P(Poisson(lambda) <= d_star - 1). The cascade explores
// subcritically iff rho_out < 1.
double rho_out(double lambda, std::uint64_t d_star);

struct BranchingParams {
    double lambda;
    std::uint64_t d_star;
    double rho_out;
};

BranchingParams branching_params(double lambda, std::uint64_t d_star);

using OffspringSampler = std::function<std::uint64_t(std::mt19937_64&)>;

// Total population of a Galton-Watson process started from `initial`
// particles, saturating at `cap`. Particle-count loop, no tree storage.
std::uint64_t gw_total_progeny(const OffspringSampler& offspring, std::uint64_t initial,
                               std::uint64_t cap, std::mt19937_64& rng);

// Union bound on the probability that any round delivers two or more hits to
// one vertex: min(1, sum_t lambda^2 |Delta_t|^2 / n).
double multi_hit_bound(double lambda, std::span<const std::uint64_t> delta_sizes,
                       std::uint64_t n);

// Shock size k_n = ceil(c * ln n).
std::uint32_t shock_size(std::uint32_t n, double c);

} // namespace contagion
