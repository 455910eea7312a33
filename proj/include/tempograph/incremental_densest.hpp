#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "tempograph/densest.hpp"
#include "tempograph/static_graph.hpp"

namespace tempo {

// Best solution seen so far over an insertion sequence. Values only go up:
// the snapshot set keeps its density when edges are added elsewhere, so a
// recorded value stays a valid lower bound for every later prefix.
struct MonotoneBest {
    double value = 0.0;        // generalized density of the snapshot
    double density = 0.0;      // plain density of the snapshot
    std::vector<uint32_t> nodes; // sorted snapshot

    // keeps the incumbent on ties, so the earliest certified set survives
    void update(double v, double plain, std::vector<uint32_t> set) {
        if (v > value) {
            value = v;
            density = plain;
            nodes = std::move(set);
        }
    }
};

struct IncrementalStats {
    uint64_t rebuilds = 0;
    uint64_t promotions = 0;
    uint64_t edges_inserted = 0;
    bool last_insert_pushed_all = false;
};

// One pruning pass: repeatedly strip every node whose augmented degree in the
// surviving set stays below 2(1+eps)*beta, for ceil(log_{1+eps}|V|) rounds,
// and return the best intermediate set by generalized density. When
// beta <= OPT/(2(1+eps)) the result reaches beta; when beta > OPT it cannot.
GeneralizedResult find(const StaticGraph& g, double beta, double eps,
                       const NodeWeights& w = {});

struct FindDensestOutcome {
    double beta = 0.0;          // first guess the pruning pass rejected
    GeneralizedResult best;     // certified best across the whole ladder
    std::vector<int> levels;    // per node of g.nodes(): rounds survived in
                                // the final (failed) pass
    int level_count = 0;        // rounds per pass at |V(g)|
};

// Guess ladder: start beta at max(1/(4(1+eps)), (1+eps)*rho) and raise it to
// (1+eps)*density(result) after every successful pruning pass. The returned
// best has generalized density >= OPT/(2(1+eps)^2) regardless of rho; a rho
// that immediately fails only costs a restart of the ladder from the floor.
FindDensestOutcome find_densest(const StaticGraph& g, double eps,
                                double rho = 0.0, const NodeWeights& w = {});

// Insert-only densest-subgraph maintenance. Keeps the node levels of the
// last failed pruning pass: level t holds nodes stripped when forming the
// (t+1)-th surviving set. Insertions push affected nodes onto a work stack
// and promote them upward while their augmented degree at their own level
// meets the threshold; a promotion reaching the top level means the failure
// certificate for the current beta no longer holds and the ladder reruns.
class LevelSets {
public:
    explicit LevelSets(double eps, NodeWeights w = {});

    // Accuracy mapped so the maintained estimate stays within 2(1+eps) of
    // the exact optimum at every consistent state: the ladder loses
    // 2(1+e)^2 with its internal e, and (1+e)^2 = 1+eps picks e.
    static LevelSets for_accuracy(double eps, NodeWeights w = {});

    // Alg step only: inserts the edge and propagates promotions, returning
    // whether the structure must be rebuilt. A duplicate static pair is a
    // no-op returning false. The caller must rebuild before inserting more.
    bool add_edge(uint32_t u, uint32_t v);

    // add_edge plus the rebuild when flagged; the structure is consistent
    // again when this returns. Returns whether the graph changed.
    bool insert(uint32_t u, uint32_t v);

    void rebuild();

    double reported() const { return best_.value; }
    const MonotoneBest& best() const { return best_; }

    double accuracy() const { return eps_; }
    double beta() const { return beta_; }
    int level_count() const { return k_; }
    int level_of(uint32_t v) const;
    std::vector<uint32_t> level_set(int t) const;
    size_t node_count() const { return node_count_; }
    size_t edge_count() const { return edge_count_; }
    const IncrementalStats& stats() const { return stats_; }
    const NodeWeights& weights() const { return weights_; }

    StaticGraph snapshot_graph() const;

    // Full recheck of the settle invariants: every node sits at a level
    // where its augmented degree is below threshold, and its degree one
    // level down meets the threshold it was promoted past.
    bool audit_consistent() const;

private:
    void ensure_node(uint32_t v);
    double augmented_degree(uint32_t v, int t, bool joining) const;
    void push(uint32_t v, std::vector<uint32_t>& stack);
    bool process_stack(std::vector<uint32_t>& stack);
    void harvest_level_sets();

    double eps_;
    NodeWeights weights_;
    std::vector<std::vector<uint32_t>> adj_; // by node id
    std::vector<char> present_;
    std::vector<int> level_;
    std::vector<size_t> set_size_; // |S_t| for t = 0..k
    std::unordered_set<uint64_t> edge_keys_;
    size_t node_count_ = 0;
    size_t edge_count_ = 0;
    double beta_ = 0.0;
    int k_ = 0;
    bool built_ = false;
    MonotoneBest best_;
    IncrementalStats stats_;
    std::vector<char> in_stack_;
};

// Feeds the stream one edge at a time into a maintained structure and
// records the best-so-far after every element (duplicates repeat the
// previous snapshot). At each prefix the reported value lies within
// [OPT/(2(1+eps)), OPT] and the sequence is non-decreasing.
std::vector<MonotoneBest> update_stream(
    std::span<const std::pair<uint32_t, uint32_t>> edges, double eps,
    const NodeWeights& w = {});

} // namespace tempo
