#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace contagion {

using Vertex = std::uint32_t;

// Immutable sparse digraph in CSR form. Rows are sorted by destination id,
// which makes edge-set equality and CSV serialization canonical. No
// self-loops, no parallel edges.
class DiGraph {
public:
    DiGraph() = default;

    // Validates and canonicalizes an arbitrary edge list.
    static DiGraph from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges);

    // Assembles directly from per-vertex sorted, distinct neighbor lists.
    // Used by the generators, which produce rows in canonical form already.
    static DiGraph from_sorted_rows(Vertex n, const std::vector<std::vector<Vertex>>& rows);

    Vertex vertex_count() const { return n_; }
    std::uint64_t edge_count() const { return static_cast<std::uint64_t>(targets_.size()); }

    Vertex out_degree(Vertex v) const {
        return static_cast<Vertex>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const Vertex> out_neighbors(Vertex v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    bool has_edge(Vertex u, Vertex v) const;

    // Reverse graph, derived in one linear pass when needed.
    DiGraph transpose() const;

    // Copy-and-modify escape hatch for the non-monotonicity demo. Grows the
    // vertex set when an endpoint is out of range.
    DiGraph with_edge_added(Vertex u, Vertex v) const;

    bool operator==(const DiGraph&) const = default;

    // Edge-list CSV: header `src,dst`, one edge per line, rows sorted by
    // (src,dst). Round-trips bit-exactly.
    void save_edge_csv(const std::string& path) const;
    static DiGraph load_edge_csv(const std::string& path, std::uint64_t vertex_count_hint = 0);

private:
    friend DiGraph gen_gnp_digraph(Vertex n, double lambda, std::mt19937_64& rng);
    friend DiGraph build_single_hit(const DiGraph& g, std::uint64_t d_star);

    Vertex n_ = 0;
    std::vector<std::uint64_t> offsets_ = {0};
    std::vector<Vertex> targets_;
};

// Directed Erdos-Renyi G(n, lambda/n): each ordered pair (u,v), u != v, is an
// edge independently with probability lambda/n. Geometric skip sampling over
// the n(n-1) ordered-pair index space, O(edges) time.
DiGraph gen_gnp_digraph(Vertex n, double lambda, std::mt19937_64& rng);

using DegreeSampler = std::function<Vertex(std::mt19937_64&)>;

// Out-degrees drawn i.i.d. from `degree_sampler`; conditional on the degree k,
// the out-neighbors are a uniform k-subset of the other vertices.
DiGraph gen_iid_outdegree_digraph(Vertex n, const DegreeSampler& degree_sampler,
                                  std::mt19937_64& rng);

// |{v : out_degree(v) == 0}| / n.
double zero_outdegree_fraction(const DiGraph& g);

// Uniform k-subset of [0,n) via partial Fisher-Yates; returned sorted.
std::vector<Vertex> sample_vertex_subset(Vertex n, Vertex k, std::mt19937_64& rng);

} // namespace contagion
