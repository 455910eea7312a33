#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tempo {

// Undirected simple graph over a subset of the global node ids.
// Nodes are kept explicitly so graphs with isolated nodes are representable;
// edges are stored deduplicated with u < v.
class StaticGraph {
public:
    using Edge = std::pair<uint32_t, uint32_t>;

    StaticGraph() = default;

    // nodes must contain every edge endpoint; extra (isolated) nodes are fine.
    StaticGraph(std::vector<uint32_t> nodes, std::vector<Edge> edges);

    // node set taken to be exactly the edge endpoints
    static StaticGraph from_edges(std::vector<Edge> edges);

    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    // |E| / |V|, 0 for the empty graph
    double density() const;

    const std::vector<uint32_t>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const StaticGraph&) const = default;

private:
    std::vector<uint32_t> nodes_; // sorted, unique
    std::vector<Edge> edges_;     // u < v, sorted, unique
};

// Edge count of the subgraph induced by `nodes` inside g, divided by |nodes|.
// Returns 0 for an empty node list.
double subgraph_density(const StaticGraph& g, std::span<const uint32_t> nodes);

size_t subgraph_edge_count(const StaticGraph& g, std::span<const uint32_t> nodes);

} // namespace tempo
