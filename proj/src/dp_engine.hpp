#pragma once

#include <memory>
#include <vector>

#include "tempograph/segmentation.hpp"
#include "tempograph/temporal_graph.hpp"

namespace tempo {

class LevelSets;

namespace detail {

// one chosen interval plus a link to the choice it extended; rows of the
// profit recurrence share tails, so reconstruction data is a persistent list
struct EpisodeChain {
    Interval interval;
    std::vector<uint32_t> nodes;
    double value = 0.0;
    std::shared_ptr<const EpisodeChain> prev;
};

using ChainPtr = std::shared_ptr<const EpisodeChain>;

// grows a half-open interval one timestamp at a time and reports the best
// subgraph seen for the current span
struct IntervalScorer {
    virtual ~IntervalScorer() = default;
    virtual void extend_to(int i) = 0;
    virtual double value() const = 0;
    virtual std::vector<uint32_t> nodes() const = 0;
};

struct ScorerFactory {
    virtual ~ScorerFactory() = default;
    // prefix is the chain the new interval would extend; null on the first row
    virtual std::unique_ptr<IntervalScorer> spawn(int start,
                                                  const EpisodeChain* prefix) = 0;
};

struct EngineOutcome {
    ChainPtr chain;
    double profit = 0.0;
};

EngineOutcome run_candidate_dp(int r, int k, double eps_dp, ScorerFactory& factory,
                               DpStats* stats);

// unwind the chain, stretch right ends to tile [1, r], split the longest
// episodes until exactly k remain, then rescore every episode pair
std::vector<Episode> assemble_episodes(const TemporalGraph& g, const ChainPtr& chain,
                                       int k);

// insert every edge with the given timestamp into the structure
void feed_timestamp(LevelSets& inst, const TemporalGraph& g, int t);

} // namespace detail
} // namespace tempo
