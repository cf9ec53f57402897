#include "contagion/bowtie.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "contagion/single_hit.hpp"

namespace contagion {

SccDecomposition scc_decompose(const DiGraph& g) {
    const Vertex n = g.vertex_count();
    constexpr Vertex unset = std::numeric_limits<Vertex>::max();

    SccDecomposition result;
    result.component_of.assign(n, unset);

    std::vector<Vertex> index(n, unset);
    std::vector<Vertex> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> scc_stack;

    struct Frame {
        Vertex v;
        std::uint64_t next_edge;
    };
    std::vector<Frame> dfs;
    Vertex next_index = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        dfs.push_back({root, 0});
        while (!dfs.empty()) {
            Frame& frame = dfs.back();
            const Vertex v = frame.v;
            if (frame.next_edge == 0) {
                index[v] = lowlink[v] = next_index++;
                scc_stack.push_back(v);
                on_stack[v] = true;
            }
            const auto row = g.out_neighbors(v);
            bool descended = false;
            while (frame.next_edge < row.size()) {
                const Vertex w = row[frame.next_edge++];
                if (index[w] == unset) {
                    dfs.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;

            if (lowlink[v] == index[v]) {
                const Vertex comp = result.component_count();
                Vertex size = 0;
                Vertex w;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = false;
                    result.component_of[w] = comp;
                    ++size;
                } while (w != v);
                result.component_sizes.push_back(size);
            }
            dfs.pop_back();
            if (!dfs.empty()) {
                const Vertex parent = dfs.back().v;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return result;
}

BowTie bowtie_extract(const DiGraph& g) {
    const Vertex n = g.vertex_count();
    if (n == 0) throw std::invalid_argument("bowtie_extract: empty graph");

    BowTie bt;
    bt.scc = scc_decompose(g);

    // First ascending vertex of each component is its minimum id, so the
    // first component achieving the maximum size wins the tie-break.
    constexpr Vertex unset = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> min_vertex(bt.scc.component_count(), unset);
    Vertex best_comp = 0;
    for (Vertex v = 0; v < n; ++v) {
        const Vertex c = bt.scc.component_of[v];
        if (min_vertex[c] != unset) continue;
        min_vertex[c] = v;
        if (bt.scc.component_sizes[c] > bt.scc.component_sizes[best_comp] ||
            (bt.scc.component_sizes[c] == bt.scc.component_sizes[best_comp] &&
             v < min_vertex[best_comp])) {
            best_comp = c;
        }
    }

    for (Vertex v = 0; v < n; ++v) {
        if (bt.scc.component_of[v] == best_comp) bt.largest_scc.push_back(v);
    }

    bt.out_set = forward_reach(g, bt.largest_scc);
    std::sort(bt.out_set.begin(), bt.out_set.end());
    bt.in_set = forward_reach(g.transpose(), bt.largest_scc);
    std::sort(bt.in_set.begin(), bt.in_set.end());

    bt.in_frac = static_cast<double>(bt.in_set.size()) / n;
    bt.out_frac = static_cast<double>(bt.out_set.size()) / n;
    bt.scc_frac = static_cast<double>(bt.largest_scc.size()) / n;
    return bt;
}

std::string bowtie_to_json(const BowTie& bt, Vertex n) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["scc_size"] = bt.largest_scc.size();
    j["in_size"] = bt.in_set.size();
    j["out_size"] = bt.out_set.size();
    j["in_frac"] = bt.in_frac;
    j["out_frac"] = bt.out_frac;
    j["scc_frac"] = bt.scc_frac;
    return j.dump(2) + "\n";
}

} // namespace contagion
