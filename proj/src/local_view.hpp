#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tempograph/static_graph.hpp"

namespace tempo {

// Dense renumbering of a static graph: local ids 0..n-1 in ascending order
// of the global ids, adjacency lists, and the edge list in local ids.
struct LocalView {
    std::vector<uint32_t> global; // local -> global id
    std::vector<std::vector<uint32_t>> adj;
    std::vector<std::pair<uint32_t, uint32_t>> edges;

    explicit LocalView(const StaticGraph& g) : global(g.nodes()) {
        adj.resize(global.size());
        edges.reserve(g.edge_count());
        for (const auto& [u, v] : g.edges()) {
            uint32_t lu = local_of(u), lv = local_of(v);
            adj[lu].push_back(lv);
            adj[lv].push_back(lu);
            edges.emplace_back(lu, lv);
        }
    }

    uint32_t local_of(uint32_t global_id) const {
        auto it = std::lower_bound(global.begin(), global.end(), global_id);
        return static_cast<uint32_t>(it - global.begin());
    }
};

inline std::vector<uint32_t> to_global(const LocalView& view,
                                       const std::vector<uint32_t>& locals) {
    std::vector<uint32_t> out;
    out.reserve(locals.size());
    for (uint32_t l : locals) out.push_back(view.global[l]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace tempo
