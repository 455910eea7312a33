#include "tempograph/static_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace tempo {

StaticGraph::StaticGraph(std::vector<uint32_t> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("static graph: self-loop");
        if (u > v) std::swap(u, v);
        if (!std::binary_search(nodes_.begin(), nodes_.end(), u) ||
            !std::binary_search(nodes_.begin(), nodes_.end(), v))
            throw std::invalid_argument("static graph: edge endpoint not in node set");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

StaticGraph StaticGraph::from_edges(std::vector<Edge> edges) {
    std::vector<uint32_t> nodes;
    nodes.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
        nodes.push_back(u);
        nodes.push_back(v);
    }
    return StaticGraph(std::move(nodes), std::move(edges));
}

double StaticGraph::density() const {
    if (nodes_.empty()) return 0.0;
    return static_cast<double>(edges_.size()) / static_cast<double>(nodes_.size());
}

size_t subgraph_edge_count(const StaticGraph& g, std::span<const uint32_t> nodes) {
    if (nodes.empty()) return 0;
    std::unordered_set<uint32_t> inside(nodes.begin(), nodes.end());
    size_t count = 0;
    for (const auto& [u, v] : g.edges())
        if (inside.count(u) && inside.count(v)) ++count;
    return count;
}

double subgraph_density(const StaticGraph& g, std::span<const uint32_t> nodes) {
    if (nodes.empty()) return 0.0;
    std::unordered_set<uint32_t> dedup(nodes.begin(), nodes.end());
    return static_cast<double>(subgraph_edge_count(g, nodes)) / static_cast<double>(dedup.size());
}

} // namespace tempo
