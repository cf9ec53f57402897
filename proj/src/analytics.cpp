#include "contagion/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace contagion {

double poisson_cdf(double lambda, std::int64_t k) {
    if (lambda < 0.0) throw std::invalid_argument("poisson_cdf: lambda must be >= 0");
    if (k < 0) return 0.0;
    // pmf recurrence in extended precision; d_star values are tiny in
    // practice so the partial sum never needs more care than exp(-lambda).
    long double pmf = std::exp(static_cast<long double>(-lambda));
    long double sum = pmf;
    for (std::int64_t j = 1; j <= k; ++j) {
        pmf *= static_cast<long double>(lambda) / j;
        sum += pmf;
    }
    return static_cast<double>(sum > 1.0L ? 1.0L : sum);
}

double rho_out(double lambda, std::uint64_t d_star) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rho_out: lambda must be > 0");
    if (d_star == 0) return 0.0;
    return lambda * poisson_cdf(lambda, static_cast<std::int64_t>(d_star) - 1);
}

BranchingParams branching_params(double lambda, std::uint64_t d_star) {
    return {lambda, d_star, rho_out(lambda, d_star)};
}

std::uint64_t gw_total_progeny(const OffspringSampler& offspring, std::uint64_t initial,
                               std::uint64_t cap, std::mt19937_64& rng) {
    if (cap < initial) throw std::invalid_argument("gw_total_progeny: cap < initial");
    std::uint64_t total = initial;
    std::uint64_t pending = initial;
    while (pending > 0) {
        --pending;
        const std::uint64_t children = offspring(rng);
        total += children;
        pending += children;
        if (total >= cap) return cap;
    }
    return total;
}

double multi_hit_bound(double lambda, std::span<const std::uint64_t> delta_sizes,
                       std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("multi_hit_bound: n must be >= 1");
    double sum = 0.0;
    for (std::uint64_t size : delta_sizes) {
        const double s = static_cast<double>(size);
        sum += lambda * lambda * s * s / static_cast<double>(n);
    }
    return sum < 1.0 ? sum : 1.0;
}

std::uint32_t shock_size(std::uint32_t n, double c) {
    if (n < 2) throw std::invalid_argument("shock_size: n must be >= 2");
    if (!(c > 0.0)) throw std::invalid_argument("shock_size: c must be > 0");
    // Natural log. ceil with a relative nudge against representation error
    // when c * ln n is an exact integer.
    const double x = c * std::log(static_cast<double>(n));
    double k = std::ceil(x - x * 1e-12);
    if (k < 1.0) k = 1.0;
    if (k > static_cast<double>(n)) {
        throw std::invalid_argument("shock_size: ceil(c log n) exceeds n");
    }
    return static_cast<std::uint32_t>(k);
}

} // namespace contagion
