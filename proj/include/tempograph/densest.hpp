#pragma once

#include <cstdint>
#include <vector>

#include "tempograph/static_graph.hpp"

namespace tempo {

struct DensestResult {
    std::vector<uint32_t> nodes; // sorted
    double density = 0.0;
    bool exact = false;
};

// Per-node additive weights for the generalized objective
//   dens_a(H) = |E(H)|/|V(H)| + lambda * sum_{v in H} delta_v,
// realized through the generalized degree
//   deg_a(v|H) = deg(v|H) + 2 * lambda * |V(H)| * delta_v.
// delta is indexed by global node id; ids beyond the vector weigh 0.
struct NodeWeights {
    double lambda = 0.0;
    std::vector<double> delta;

    double delta_of(uint32_t v) const {
        return v < delta.size() ? delta[v] : 0.0;
    }
    bool trivial() const { return lambda == 0.0; }
    void validate() const; // throws std::invalid_argument on negative entries
};

struct GeneralizedResult {
    std::vector<uint32_t> nodes; // sorted
    double gen_density = 0.0;    // dens_a of the node set
    double density = 0.0;        // plain |E|/|V| of the node set
};

double gen_density_of(const StaticGraph& g, std::span<const uint32_t> nodes,
                      const NodeWeights& w);

// Exhaustive search over all non-empty subsets; ties broken toward the
// lexicographically smallest sorted node list. Refuses graphs with more
// than 20 nodes. Subset comparisons use exact integer arithmetic.
DensestResult brute_force_densest(const StaticGraph& g);

// Exhaustive maximizer of dens_a, same limits and tie-breaking. Values are
// doubles here, so only exactly-equal values fall through to the tie rule.
GeneralizedResult brute_force_densest_generalized(const StaticGraph& g,
                                                  const NodeWeights& w);

// Exact solver: binary search over density guesses with a min-cut check,
// run on integer-scaled capacities so termination at a gap below
// 1/(n(n-1)) pins the unique achievable density in the bracket. The node
// set returned is the source side of the last successful cut (the
// inclusion-minimal maximizer at that guess).
DensestResult exact_densest(const StaticGraph& g);

// Min-degree peeling, 1/2-approximation. Ties on degree break toward the
// smallest node id; the best prefix is tracked with >=, so among equally
// dense prefixes the latest (smallest) one wins.
DensestResult charikar_peel(const StaticGraph& g);

// Peeling under the generalized degree. Recomputes deg_a each round since
// the |V(H)| factor shifts as nodes leave; with w.trivial() the removal
// trace and result match charikar_peel exactly.
GeneralizedResult static_greedy_generalized(const StaticGraph& g, const NodeWeights& w);

// Weight function for coverage-style selection: must be concave,
// non-decreasing, with w(0) = 0.
using CountWeightFn = double (*)(uint64_t);

// Selects k subgraphs sequentially, each maximizing
//   d(H) + lambda * sum_{v in H} (w(x_v + 1) - w(x_v))
// where x_v counts prior selections of v. The per-round maximizer is
// static_greedy_generalized, or the exhaustive search when exact_inner is
// set (small graphs only); the exact variant carries the classic 1 - 1/e
// guarantee for the summed objective. With lambda = 0 every round repeats
// the round-1 result.
std::vector<GeneralizedResult> greedy_k_static(const StaticGraph& g, int k, double lambda,
                                               CountWeightFn w, bool exact_inner = false);

} // namespace tempo
