#include "contagion/single_hit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contagion {

DiGraph build_single_hit(const DiGraph& g, std::uint64_t d_star) {
    const Vertex n = g.vertex_count();
    DiGraph sh;
    sh.n_ = n;
    sh.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t total = 0;
    for (Vertex u = 0; u < n; ++u) {
        const Vertex d = g.out_degree(u);
        if (d >= 1 && d <= d_star) total += d;
        sh.offsets_[u + 1] = total;
    }
    sh.targets_.reserve(total);
    for (Vertex u = 0; u < n; ++u) {
        const Vertex d = g.out_degree(u);
        if (d >= 1 && d <= d_star) {
            auto row = g.out_neighbors(u);
            sh.targets_.insert(sh.targets_.end(), row.begin(), row.end());
        }
    }
    return sh;
}

std::vector<Vertex> forward_reach(const DiGraph& g, std::span<const Vertex> sources) {
    const Vertex n = g.vertex_count();
    std::vector<bool> visited(n, false);
    std::vector<Vertex> order;
    order.reserve(sources.size());
    for (Vertex s : sources) {
        if (s >= n) {
            throw std::invalid_argument("forward_reach: source " + std::to_string(s) +
                                        " out of range");
        }
        if (!visited[s]) {
            visited[s] = true;
            order.push_back(s);
        }
    }
    // `order` doubles as the frontier queue: everything behind `head` is done.
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Vertex v : g.out_neighbors(order[head])) {
            if (!visited[v]) {
                visited[v] = true;
                order.push_back(v);
            }
        }
    }
    return order;
}

TruncatedOutdegreeLaw::TruncatedOutdegreeLaw(Vertex n, double lambda, std::uint64_t d_star)
    : n_(n), lambda_(lambda), d_star_(d_star) {
    if (n < 1) throw std::invalid_argument("TruncatedOutdegreeLaw: n must be >= 1");
    if (!(lambda > 0.0) || lambda >= static_cast<double>(n)) {
        throw std::invalid_argument("TruncatedOutdegreeLaw: need 0 < lambda < n");
    }
    const std::uint64_t top = std::min<std::uint64_t>(d_star, n - 1);
    pmf_.assign(top + 1, 0.0);

    // Binomial(n-1, p) pmf by recurrence in extended precision, then push the
    // truncated tail mass onto the atom at 0.
    const long double p = static_cast<long double>(lambda) / n;
    const long double q = 1.0L - p;
    long double binom_k = std::pow(q, static_cast<long double>(n - 1)); // pmf at k = 0
    long double kept = 0.0L;
    long double mean = 0.0L;
    for (std::uint64_t k = 0; k <= top; ++k) {
        pmf_[k] = static_cast<double>(binom_k);
        kept += binom_k;
        mean += static_cast<long double>(k) * binom_k;
        if (k < top) binom_k *= (static_cast<long double>(n - 1 - k) / (k + 1)) * (p / q);
    }
    pmf_[0] += static_cast<double>(1.0L - kept);
    mean_ = static_cast<double>(mean);
}

Vertex TruncatedOutdegreeLaw::sample(std::mt19937_64& rng) const {
    std::binomial_distribution<Vertex> binom(n_ - 1, lambda_ / static_cast<double>(n_));
    const Vertex b = binom(rng);
    return b <= d_star_ ? b : 0;
}

double TruncatedOutdegreeLaw::pmf(std::uint64_t k) const {
    return k < pmf_.size() ? pmf_[k] : 0.0;
}

DegreeSampler TruncatedOutdegreeLaw::sampler() const {
    return [law = *this](std::mt19937_64& rng) { return law.sample(rng); };
}

} // namespace contagion
