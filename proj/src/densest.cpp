#include "tempograph/densest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "local_view.hpp"
#include "tempograph/maxflow.hpp"

namespace tempo {

void NodeWeights::validate() const {
    for (double d : delta)
        if (d < 0.0) throw std::invalid_argument("node weights: negative delta");
    if (lambda < 0.0) throw std::invalid_argument("node weights: negative lambda");
}

double gen_density_of(const StaticGraph& g, std::span<const uint32_t> nodes,
                      const NodeWeights& w) {
    if (nodes.empty()) return 0.0;
    double sum_delta = 0.0;
    for (uint32_t v : nodes) sum_delta += w.delta_of(v);
    return subgraph_density(g, nodes) + w.lambda * sum_delta;
}

namespace {

// sorted-list lexicographic order on subsets of ascending ids: the two
// lists agree below the lowest differing bit, then the holder of that
// bit is smaller unless the other set has run out of elements there
bool lex_mask_smaller(uint32_t a, uint32_t b) {
    uint32_t diff = a ^ b;
    if (diff == 0) return false;
    uint32_t pos = static_cast<uint32_t>(std::countr_zero(diff));
    if ((a >> pos) & 1u) return (b >> pos) != 0;
    return (a >> pos) == 0;
}

// bitmask adjacency of the local view; index v holds v's neighbourhood
std::vector<uint32_t> adjacency_masks(const LocalView& view, size_t n) {
    std::vector<uint32_t> adj_mask(n, 0);
    for (const auto& [u, v] : view.edges) {
        adj_mask[u] |= 1u << v;
        adj_mask[v] |= 1u << u;
    }
    return adj_mask;
}

} // namespace

DensestResult brute_force_densest(const StaticGraph& g) {
    size_t n = g.node_count();
    if (n > 20) throw std::invalid_argument("brute_force_densest: more than 20 nodes");
    if (n == 0) return {};

    LocalView view(g);
    std::vector<uint32_t> adj_mask = adjacency_masks(view, n);

    // compare e1/s1 vs e2/s2 exactly as e1*s2 vs e2*s1
    uint64_t best_e = 0, best_s = 1;
    uint32_t best_mask = 0;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        uint64_t e = 0;
        uint32_t rest = mask;
        while (rest) {
            uint32_t v = static_cast<uint32_t>(std::countr_zero(rest));
            rest &= rest - 1;
            e += static_cast<uint64_t>(std::popcount(adj_mask[v] & mask));
        }
        e /= 2;
        uint64_t s = static_cast<uint64_t>(std::popcount(mask));
        uint64_t lhs = e * best_s, rhs = best_e * s;
        if (best_mask == 0 || lhs > rhs ||
            (lhs == rhs && lex_mask_smaller(mask, best_mask))) {
            best_e = e;
            best_s = s;
            best_mask = mask;
        }
    }

    std::vector<uint32_t> locals;
    for (uint32_t v = 0; v < n; ++v)
        if (best_mask & (1u << v)) locals.push_back(v);
    DensestResult res;
    res.nodes = to_global(view, locals);
    res.density = static_cast<double>(best_e) / static_cast<double>(best_s);
    res.exact = true;
    return res;
}

GeneralizedResult brute_force_densest_generalized(const StaticGraph& g,
                                                  const NodeWeights& w) {
    w.validate();
    size_t n = g.node_count();
    if (n > 20)
        throw std::invalid_argument(
            "brute_force_densest_generalized: more than 20 nodes");
    GeneralizedResult res;
    if (n == 0) return res;

    LocalView view(g);
    std::vector<uint32_t> adj_mask = adjacency_masks(view, n);
    std::vector<double> delta(n, 0.0);
    for (uint32_t v = 0; v < n; ++v) delta[v] = w.delta_of(view.global[v]);

    double best_value = -1.0, best_plain = 0.0;
    uint32_t best_mask = 0;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        uint64_t e = 0;
        double sum_delta = 0.0;
        uint32_t rest = mask;
        while (rest) {
            uint32_t v = static_cast<uint32_t>(std::countr_zero(rest));
            rest &= rest - 1;
            e += static_cast<uint64_t>(std::popcount(adj_mask[v] & mask));
            sum_delta += delta[v];
        }
        e /= 2;
        double s = static_cast<double>(std::popcount(mask));
        double plain = static_cast<double>(e) / s;
        double value = plain + w.lambda * sum_delta;
        if (value > best_value ||
            (value == best_value && lex_mask_smaller(mask, best_mask))) {
            best_value = value;
            best_plain = plain;
            best_mask = mask;
        }
    }

    std::vector<uint32_t> locals;
    for (uint32_t v = 0; v < n; ++v)
        if (best_mask & (1u << v)) locals.push_back(v);
    res.nodes = to_global(view, locals);
    res.gen_density = best_value;
    res.density = best_plain;
    return res;
}

DensestResult exact_densest(const StaticGraph& g) {
    size_t n = g.node_count();
    size_t m = g.edge_count();
    if (n == 0) return {};
    if (m == 0) {
        // all densities are 0; the lexicographic tie-break picks the
        // single smallest node
        DensestResult res;
        res.nodes = {g.nodes().front()};
        res.density = 0.0;
        res.exact = true;
        return res;
    }

    LocalView view(g);
    std::vector<int64_t> deg(n, 0);
    for (const auto& [u, v] : view.edges) {
        deg[u]++;
        deg[v]++;
    }

    // Work in units of 1/D with D = 2n(n-1): two distinct achievable
    // densities e1/s1 != e2/s2 differ by at least 1/(n(n-1)) = 2/D, so a
    // bracket of width 1/D holds exactly one achievable value.
    const int64_t D = 2 * static_cast<int64_t>(n) * static_cast<int64_t>(n - 1);
    const int64_t mD = static_cast<int64_t>(m) * D;

    int s = static_cast<int>(n), t = static_cast<int>(n) + 1;
    MaxFlow net(static_cast<int>(n) + 2);
    std::vector<int> src_arc(n), sink_arc(n);
    std::vector<int> edge_arc(view.edges.size());
    for (size_t v = 0; v < n; ++v) src_arc[v] = net.add_edge(s, static_cast<int>(v), 0);
    for (size_t v = 0; v < n; ++v) sink_arc[v] = net.add_edge(static_cast<int>(v), t, 0);
    for (size_t i = 0; i < view.edges.size(); ++i)
        edge_arc[i] = net.add_edge(static_cast<int>(view.edges[i].first),
                                   static_cast<int>(view.edges[i].second), 0, 0);

    auto probe = [&](int64_t gn) {
        // for subset S the cut equals m*n*D - 2*(D*e(S) - gn*|S|); flow
        // strictly below m*n*D certifies a subgraph denser than gn/D
        for (size_t v = 0; v < n; ++v) {
            net.set_cap(src_arc[v], mD);
            net.set_cap(src_arc[v] ^ 1, 0);
            net.set_cap(sink_arc[v], mD + 2 * gn - D * deg[v]);
            net.set_cap(sink_arc[v] ^ 1, 0);
        }
        for (int arc : edge_arc) {
            net.set_cap(arc, D);
            net.set_cap(arc ^ 1, D);
        }
        return net.run(s, t);
    };

    const int64_t full = static_cast<int64_t>(m) * static_cast<int64_t>(n) * D;
    int64_t lo = 0, hi = mD;
    std::vector<uint32_t> lo_side;
    {
        int64_t flow = probe(0);
        if (flow >= full) throw std::logic_error("exact_densest: no positive-density cut");
        auto side = net.min_cut_side(s);
        lo_side.clear();
        for (uint32_t v = 0; v < n; ++v)
            if (side[v]) lo_side.push_back(v);
    }
    while (hi - lo > 1) {
        int64_t mid = lo + (hi - lo) / 2;
        int64_t flow = probe(mid);
        if (flow < full) {
            lo = mid;
            auto side = net.min_cut_side(s);
            lo_side.clear();
            for (uint32_t v = 0; v < n; ++v)
                if (side[v]) lo_side.push_back(v);
        } else {
            hi = mid;
        }
    }

    DensestResult res;
    res.nodes = to_global(view, lo_side);
    size_t e_in = subgraph_edge_count(g, res.nodes);
    res.density = static_cast<double>(e_in) / static_cast<double>(res.nodes.size());
    res.exact = true;
    return res;
}

namespace {

struct PeelOutcome {
    std::vector<uint32_t> locals; // best prefix, local ids
    double best_value = 0.0;
    double best_plain = 0.0;
};

// Shared peeling loop: each round drops the node minimizing
// deg(v) + 2*lambda*|V|*delta_v (ties toward smaller global id) and keeps
// the best prefix by value = density + lambda*sum(delta). The best tracker
// updates on >=, so later (smaller) prefixes win ties.
PeelOutcome peel_generalized(const LocalView& view, const NodeWeights& w) {
    size_t n = view.global.size();
    PeelOutcome out;
    if (n == 0) return out;

    std::vector<char> alive(n, 1);
    std::vector<int64_t> deg(n, 0);
    for (const auto& [u, v] : view.edges) {
        deg[u]++;
        deg[v]++;
    }
    size_t edges_left = view.edges.size();
    size_t nodes_left = n;
    double sum_delta = 0.0;
    std::vector<double> delta(n, 0.0);
    for (size_t v = 0; v < n; ++v) {
        delta[v] = w.delta_of(view.global[v]);
        sum_delta += delta[v];
    }

    auto value_now = [&]() {
        if (nodes_left == 0) return 0.0;
        return static_cast<double>(edges_left) / static_cast<double>(nodes_left) +
               w.lambda * sum_delta;
    };
    auto plain_now = [&]() {
        if (nodes_left == 0) return 0.0;
        return static_cast<double>(edges_left) / static_cast<double>(nodes_left);
    };

    std::vector<uint32_t> removal_order;
    removal_order.reserve(n);
    double best = value_now();
    double best_plain = plain_now();
    size_t best_removed = 0;

    while (nodes_left > 0) {
        uint32_t pick = UINT32_MAX;
        double pick_score = 0.0;
        for (uint32_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            double score = static_cast<double>(deg[v]) +
                           2.0 * w.lambda * static_cast<double>(nodes_left) * delta[v];
            if (pick == UINT32_MAX || score < pick_score ||
                (score == pick_score && view.global[v] < view.global[pick])) {
                pick = v;
                pick_score = score;
            }
        }
        alive[pick] = 0;
        removal_order.push_back(pick);
        for (uint32_t nb : view.adj[pick])
            if (alive[nb]) {
                deg[nb]--;
                edges_left--;
            }
        nodes_left--;
        sum_delta -= delta[pick];
        if (nodes_left > 0 && value_now() >= best) {
            best = value_now();
            best_plain = plain_now();
            best_removed = removal_order.size();
        }
    }

    std::vector<char> removed(n, 0);
    for (size_t i = 0; i < best_removed; ++i) removed[removal_order[i]] = 1;
    for (uint32_t v = 0; v < n; ++v)
        if (!removed[v]) out.locals.push_back(v);
    out.best_value = best;
    out.best_plain = best_plain;
    return out;
}

} // namespace

DensestResult charikar_peel(const StaticGraph& g) {
    if (g.empty()) return {};
    LocalView view(g);
    PeelOutcome peeled = peel_generalized(view, NodeWeights{});
    DensestResult res;
    res.nodes = to_global(view, peeled.locals);
    res.density = peeled.best_plain;
    res.exact = false;
    return res;
}

GeneralizedResult static_greedy_generalized(const StaticGraph& g, const NodeWeights& w) {
    w.validate();
    if (g.empty()) return {};
    LocalView view(g);
    PeelOutcome peeled = peel_generalized(view, w);
    GeneralizedResult res;
    res.nodes = to_global(view, peeled.locals);
    res.gen_density = peeled.best_value;
    res.density = peeled.best_plain;
    return res;
}

std::vector<GeneralizedResult> greedy_k_static(const StaticGraph& g, int k, double lambda,
                                               CountWeightFn w, bool exact_inner) {
    if (k < 1) throw std::invalid_argument("greedy_k_static: k must be >= 1");
    if (lambda < 0.0) throw std::invalid_argument("greedy_k_static: negative lambda");

    uint32_t max_id = 0;
    for (uint32_t v : g.nodes()) max_id = std::max(max_id, v);
    std::vector<uint64_t> counts(g.empty() ? 0 : max_id + 1, 0);

    std::vector<GeneralizedResult> picks;
    picks.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        NodeWeights weights;
        weights.lambda = lambda;
        weights.delta.resize(counts.size(), 0.0);
        for (uint32_t v : g.nodes())
            weights.delta[v] = w(counts[v] + 1) - w(counts[v]);
        GeneralizedResult pick = exact_inner
                                      ? brute_force_densest_generalized(g, weights)
                                      : static_greedy_generalized(g, weights);
        for (uint32_t v : pick.nodes) counts[v]++;
        picks.push_back(std::move(pick));
    }
    return picks;
}

} // namespace tempo
