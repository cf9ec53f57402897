#pragma once

#include <cstdint>
#include <random>

namespace contagion {

// Stream tags keep the graph, shock, and auxiliary draws of one trial on
// disjoint RNG streams, so shocks are independent of the graph by
// construction and any stream can be re-derived from (master_seed, n,
// trial_index) alone.
enum class Stream : std::uint64_t {
    graph = 0x67726170,
    shock = 0x73686f63,
    aux = 0x61757820,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Mixes (master, a, b, c) into one well-spread 64-bit seed. Pure function:
// identical inputs give identical streams on every run and worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t state = master;
    std::uint64_t h = splitmix64(state);
    state ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(state);
    state ^= b + 0xc2b2ae3d27d4eb4fULL;
    h ^= splitmix64(state);
    state ^= c + 0x165667b19e3779f9ULL;
    h ^= splitmix64(state);
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    return std::mt19937_64(derive_seed(master, a, b, c));
}

inline std::mt19937_64 trial_engine(std::uint64_t master, std::uint64_t n,
                                    std::uint64_t trial_index, Stream stream) {
    return make_engine(master, n, trial_index, static_cast<std::uint64_t>(stream));
}

} // namespace contagion
