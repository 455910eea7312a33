#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tempograph/segmentation.hpp"
#include "tempograph/temporal_graph.hpp"

namespace tempo {

// Planted-community benchmark: a background Erdos-Renyi graph spread
// uniformly over the timeline, plus disjoint denser communities whose edges
// live inside non-overlapping sub-intervals.
struct SyntheticSpec {
    uint32_t nodes = 100;          // node universe, labels 0..nodes-1
    int64_t timeline = 1000;       // timestamps drawn from [1, timeline]
    int communities = 5;
    uint32_t community_size = 8;
    double community_degree = 5.0; // target average degree inside a community
    double background_degree = 2.0;
    int64_t interval_length = 100;
    uint64_t seed = 1;
};

struct PlantedCommunity {
    std::vector<int64_t> nodes; // input labels, sorted
    int64_t start = 0;          // raw timestamps, inclusive
    int64_t end = 0;
};

struct GroundTruth {
    std::vector<PlantedCommunity> communities;
};

// Builds the benchmark graph. Average degree d on n' nodes becomes edge
// probability d / (n' - 1); each chosen static edge gets one uniform
// timestamp. Community intervals are evenly spaced with seeded jitter.
// Throws std::domain_error when the spec cannot be realized.
std::pair<TemporalGraph, GroundTruth> generate_synthetic(const SyntheticSpec& spec);

// Episode in output units: raw timestamps and input labels. This is what
// result files carry, so evaluation works on it directly.
struct RawEpisode {
    int64_t start = 0;
    int64_t end = 0;
    std::vector<int64_t> labels; // sorted
    double density = 0.0;
};

// Converts a segmentation into output units against its source graph.
std::vector<RawEpisode> to_raw_episodes(const TemporalGraph& g,
                                        const Segmentation& seg);

struct MatchScore {
    int episode = -1; // index into found episodes, -1 when nothing overlaps
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EvalMetrics {
    std::vector<MatchScore> matches; // one per planted community
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    double mean_f1 = 0.0;
    double mean_jaccard = 0.0; // over unordered pairs of found node sets
    size_t cover_distinct = 0; // distinct nodes across found node sets
};

// Matches each planted community to the episode with the largest raw-time
// interval overlap (ties: earliest episode) and scores the node sets in
// label space. Zero overlap scores that community 0 across the board.
EvalMetrics evaluate_raw(const std::vector<RawEpisode>& found,
                         const GroundTruth& truth);

EvalMetrics evaluate_episodes(const TemporalGraph& g, const Segmentation& found,
                              const GroundTruth& truth);

} // namespace tempo
