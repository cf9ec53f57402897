#include "contagion/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace contagion {

namespace {

void check_vertex(Vertex v, Vertex n, const char* what) {
    if (v >= n) {
        throw std::invalid_argument(std::string(what) + " vertex id " + std::to_string(v) +
                                    " out of range [0," + std::to_string(n) + ")");
    }
}

} // namespace

DiGraph DiGraph::from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
    for (const auto& [u, v] : edges) {
        check_vertex(u, n, "edge source");
        check_vertex(v, n, "edge target");
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("parallel edge in edge list");
    }

    DiGraph g;
    g.n_ = n;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    g.targets_.resize(edges.size());
    for (const auto& [u, v] : edges) g.offsets_[u + 1]++;
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    for (std::size_t i = 0; i < edges.size(); ++i) g.targets_[i] = edges[i].second;
    return g;
}

DiGraph DiGraph::from_sorted_rows(Vertex n, const std::vector<std::vector<Vertex>>& rows) {
    DiGraph g;
    g.n_ = n;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t total = 0;
    for (Vertex u = 0; u < n; ++u) {
        total += rows[u].size();
        g.offsets_[u + 1] = total;
    }
    g.targets_.reserve(total);
    for (Vertex u = 0; u < n; ++u) {
        g.targets_.insert(g.targets_.end(), rows[u].begin(), rows[u].end());
    }
    return g;
}

bool DiGraph::has_edge(Vertex u, Vertex v) const {
    auto row = out_neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

DiGraph DiGraph::transpose() const {
    DiGraph t;
    t.n_ = n_;
    t.offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (Vertex v : targets_) t.offsets_[v + 1]++;
    for (std::size_t i = 1; i < t.offsets_.size(); ++i) t.offsets_[i] += t.offsets_[i - 1];
    t.targets_.resize(targets_.size());
    std::vector<std::uint64_t> cursor(t.offsets_.begin(), t.offsets_.end() - 1);
    // Ascending source order keeps each transposed row sorted.
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v : out_neighbors(u)) t.targets_[cursor[v]++] = u;
    }
    return t;
}

DiGraph DiGraph::with_edge_added(Vertex u, Vertex v) const {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < n_ && v < n_ && has_edge(u, v)) throw std::invalid_argument("edge already present");
    Vertex n = std::max({n_, static_cast<Vertex>(u + 1), static_cast<Vertex>(v + 1)});
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(targets_.size() + 1);
    for (Vertex s = 0; s < n_; ++s) {
        for (Vertex t : out_neighbors(s)) edges.emplace_back(s, t);
    }
    edges.emplace_back(u, v);
    return from_edges(n, std::move(edges));
}

void DiGraph::save_edge_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "src,dst\n";
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v : out_neighbors(u)) out << u << ',' << v << '\n';
    }
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

DiGraph DiGraph::load_edge_csv(const std::string& path, std::uint64_t vertex_count_hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || (line != "src,dst" && line != "src,dst\r")) {
        throw std::runtime_error(path + ": expected header line 'src,dst'");
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex max_id = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed edge row");
        }
        Vertex u = 0, v = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, u);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), v);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != line.data() + comma ||
            r2.ptr != line.data() + line.size()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed edge row");
        }
        max_id = std::max({max_id, u, v});
        edges.emplace_back(u, v);
    }
    std::uint64_t n = edges.empty() ? vertex_count_hint
                                    : std::max<std::uint64_t>(vertex_count_hint, std::uint64_t{max_id} + 1);
    return from_edges(static_cast<Vertex>(n), std::move(edges));
}

DiGraph gen_gnp_digraph(Vertex n, double lambda, std::mt19937_64& rng) {
    if (n < 2) throw std::invalid_argument("gen_gnp_digraph: n must be >= 2");
    if (!(lambda > 0.0) || lambda >= static_cast<double>(n)) {
        throw std::invalid_argument("gen_gnp_digraph: lambda must satisfy 0 < lambda < n");
    }
    const double p = lambda / static_cast<double>(n);
    const std::uint64_t total = std::uint64_t{n} * (n - 1);

    // Skip sampling over the ordered-pair index space: index j encodes
    // (u, t) = (j / (n-1), j % (n-1)) and the target v = t + (t >= u),
    // so indices enumerate pairs in (src, dst) order and rows come out sorted.
    DiGraph g;
    g.n_ = n;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    const double expected = lambda * static_cast<double>(n - 1);
    g.targets_.reserve(static_cast<std::size_t>(expected + 5.0 * std::sqrt(expected + 1.0)) + 16);
    std::geometric_distribution<std::uint64_t> skip(p);
    std::uint64_t pos = skip(rng);
    while (pos < total) {
        const Vertex u = static_cast<Vertex>(pos / (n - 1));
        const Vertex t = static_cast<Vertex>(pos % (n - 1));
        const Vertex v = t + (t >= u ? 1 : 0);
        g.offsets_[u + 1]++;
        g.targets_.push_back(v);
        pos += 1 + skip(rng);
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    return g;
}

DiGraph gen_iid_outdegree_digraph(Vertex n, const DegreeSampler& degree_sampler,
                                  std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("gen_iid_outdegree_digraph: n must be >= 1");
    std::vector<std::vector<Vertex>> rows(n);
    std::unordered_set<Vertex> chosen;
    for (Vertex u = 0; u < n; ++u) {
        const Vertex k = degree_sampler(rng);
        if (k > n - 1) {
            throw std::invalid_argument("degree sampler returned " + std::to_string(k) +
                                        " > n-1 = " + std::to_string(n - 1));
        }
        if (k == 0) continue;
        // Floyd's algorithm: uniform k-subset of [0, n-2], then shift past u
        // to exclude the self-loop slot.
        chosen.clear();
        for (Vertex j = n - 1 - k; j < n - 1; ++j) {
            std::uniform_int_distribution<Vertex> pick(0, j);
            const Vertex r = pick(rng);
            if (!chosen.insert(r).second) chosen.insert(j);
        }
        auto& row = rows[u];
        row.reserve(k);
        for (Vertex y : chosen) row.push_back(y + (y >= u ? 1 : 0));
        std::sort(row.begin(), row.end());
    }
    return DiGraph::from_sorted_rows(n, rows);
}

double zero_outdegree_fraction(const DiGraph& g) {
    const Vertex n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("zero_outdegree_fraction: empty graph");
    std::uint64_t zeros = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (g.out_degree(v) == 0) ++zeros;
    }
    return static_cast<double>(zeros) / static_cast<double>(n);
}

std::vector<Vertex> sample_vertex_subset(Vertex n, Vertex k, std::mt19937_64& rng) {
    if (k > n) throw std::invalid_argument("sample_vertex_subset: k > n");
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    for (Vertex i = 0; i < k; ++i) {
        std::uniform_int_distribution<Vertex> pick(i, n - 1);
        std::swap(ids[i], ids[pick(rng)]);
    }
    std::vector<Vertex> subset(ids.begin(), ids.begin() + k);
    std::sort(subset.begin(), subset.end());
    return subset;
}

} // namespace contagion
