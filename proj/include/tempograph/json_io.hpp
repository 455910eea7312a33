#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tempograph/coverage.hpp"
#include "tempograph/segmentation.hpp"
#include "tempograph/synthetic.hpp"
#include "tempograph/temporal_graph.hpp"

namespace tempo {

// Wall-clock phase breakdown attached to result documents, in seconds.
struct PhaseTimings {
    double parse = 0.0;
    double solve = 0.0;
    double post = 0.0;
    double total = 0.0;
};

// Parameters echoed into the result document.
struct RunParams {
    std::string mode;
    int k = 0;
    double eps_dp = 0.0;
    double eps_ds = 0.0;
    double lambda = 0.0;
    std::string cover_fn; // empty unless the run was coverage-aware
    bool post_processed = false;
    bool sketch = false;
    double eps_cm = 0.0;
    double delta_cm = 0.0;
    uint64_t seed = 0;
    std::string input;
};

// Result document; intervals in raw timestamps, nodes as input labels.
// cover may be null. Pretty-printed with a trailing newline.
std::string result_json(const TemporalGraph& g, const Segmentation& seg,
                        const RunParams& params, const PhaseTimings& timings,
                        const CoverReport* cover);

// One row per episode: start,end,density,size,nodes (labels joined by ';').
std::string result_csv(const TemporalGraph& g, const Segmentation& seg);

// Round-trip for the episode list of a result document, for evaluation.
std::vector<RawEpisode> episodes_from_result_json(const std::string& text);

std::string truth_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

// Per-community scores, means, the full pairwise Jaccard matrix of the found
// node sets, and cover.
std::string metrics_json(const std::vector<RawEpisode>& found,
                         const EvalMetrics& metrics);

// Writes to path via a sibling temp file and rename, so failures never leave
// a partial file at the destination. Throws std::ios_base::failure.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace tempo
