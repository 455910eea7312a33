#pragma once

#include <cstdint>
#include <vector>

namespace tempo {

// Dinic max-flow on int64 capacities. Capacities can be rewritten between
// runs with set_cap, which the parametric densest-subgraph search uses to
// avoid rebuilding the network on every guess; flow state lives in the
// residual capacities, so callers must rewrite every arc they care about.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(static_cast<size_t>(n), -1) {}

    // returns the arc id; the reverse arc is id ^ 1
    int add_edge(int from, int to, int64_t cap, int64_t rev_cap = 0);

    // rewrites one direction's capacity; callers restore every arc between
    // runs since pushed flow is encoded in the residual capacities
    void set_cap(int arc, int64_t cap) { arcs_[static_cast<size_t>(arc)].cap = cap; }

    int64_t run(int s, int t);

    // after run(): true for nodes reachable from s in the residual graph
    std::vector<char> min_cut_side(int s) const;

private:
    struct Arc {
        int to;
        int next;
        int64_t cap;
    };
    bool bfs(int s, int t);
    int64_t dfs(int v, int t, int64_t limit);

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

} // namespace tempo
