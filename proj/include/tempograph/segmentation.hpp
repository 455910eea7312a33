#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempograph/temporal_graph.hpp"

namespace tempo {

// One selected episode: a timestamp interval (compressed 1-based indices)
// with a node set and the plain density of that set within the interval.
struct Episode {
    Interval interval;
    std::vector<uint32_t> nodes; // sorted
    double density = 0.0;
};

struct Segmentation {
    std::vector<Episode> episodes; // ordered, disjoint, covering [1, r]
    double total_profit = 0.0;     // sum of episode densities
    int k = 0;
    double eps_dp = 0.0;
    double eps_ds = 0.0;
    double lambda = 0.0;
    std::string mode;
};

// Introspection for tests: the full profit table and the candidate-list
// high-water mark observed right after each sparsification call.
struct DpStats {
    std::vector<std::vector<double>> table; // table[l-1][i] = s[i, l], i in 0..r
    size_t max_candidates = 0;
    size_t candidate_cap = 0; // 2 + ceil(k(1+eps_dp)/eps_dp)
};

enum class DensestMode { Exact, Incremental };

// Test oracle: enumerates every boundary placement and scores parts with the
// subset-enumeration densest solver. Ties resolve to the lexicographically
// earliest boundary vector. Refuses instances beyond r<=20, k<=5, n<=12.
Segmentation brute_force_segment(const TemporalGraph& g, int k);

// Full dynamic program over all split points. DensestMode::Exact gives the
// optimal segmentation; DensestMode::Incremental scores each [j,i] with a
// maintained structure fed by suffix insertion (j stepping downward), using
// eps_ds as its accuracy.
Segmentation exact_dp_segment(const TemporalGraph& g, int k, DensestMode densest,
                              double eps_ds = 0.0, DpStats* stats = nullptr);

// Candidate-sparsified dynamic program: keeps a short list of interval
// starts, takes the max of the two carried values and the best candidate,
// and prunes the list after every step. Guarantees, against the optimum:
// (1+eps_dp) with exact densest scoring, 2(1+eps_ds)(1+eps_dp) with the
// incremental structure.
Segmentation approx_dp_segment(const TemporalGraph& g, int k, double eps_dp,
                               DensestMode densest, double eps_ds = 0.0,
                               DpStats* stats = nullptr);

// Intervals unchanged; every episode's node set and density are replaced by
// the exact densest subgraph of that interval. The total never decreases.
Segmentation post_process(const TemporalGraph& g, const Segmentation& seg);

struct SprsItem {
    int start = 0;       // interval start the candidate represents
    double cached = 0.0; // profit of the best prefix ending just before it
};

// Keeps the candidate list short: with delta = sigma*eps/(k + level*eps),
// repeatedly drops the middle of any consecutive triple whose cached-value
// spread fits within delta. The first and last entries always survive.
void sprs(std::vector<SprsItem>& a, double sigma, int level, double eps, int k);

size_t sprs_candidate_cap(int k, double eps);

} // namespace tempo
