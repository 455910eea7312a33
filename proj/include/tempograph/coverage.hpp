#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tempograph/densest.hpp"
#include "tempograph/segmentation.hpp"
#include "tempograph/temporal_graph.hpp"

namespace tempo {

// built-in weight functions; both are concave, non-decreasing, and 0 at 0
double indicator_weight(uint64_t x);
double sqrt_weight(uint64_t x);

// "indicator" or "sqrt"; anything else throws std::invalid_argument
CountWeightFn cover_weight_by_name(const std::string& name);

// Count-min sketch sized width = ceil(e / eps), depth = ceil(ln(1 / delta)).
// Estimates never fall below the true count; overshoot stays within eps * N
// with probability 1 - delta over the seeded hash choice, N = total updates.
class CountMinSketch {
public:
    CountMinSketch(double eps, double delta, uint64_t seed);

    void update(uint32_t v);
    uint64_t query(uint32_t v) const;

    size_t width() const { return width_; }
    size_t depth() const { return depth_; }

private:
    size_t cell_of(size_t row, uint32_t v) const;

    size_t width_ = 0;
    size_t depth_ = 0;
    std::vector<uint64_t> cells_; // row-major, depth x width
    std::vector<std::pair<uint64_t, uint64_t>> hash_; // (a, b) per row
};

// Per-node selection counts plus the weight function and the lambda knob.
// Counts are an exact map by default; with_sketch swaps in a count-min
// estimate (still tracking which nodes were touched, for iteration).
class CoverState {
public:
    CoverState(CountWeightFn w, double lambda);
    static CoverState with_sketch(CountWeightFn w, double lambda, double eps_cm,
                                  double delta_cm, uint64_t seed);

    // record one selection of this node set (entries assumed distinct)
    void add(std::span<const uint32_t> nodes);

    uint64_t count_of(uint32_t v) const;
    double marginal_of(uint32_t v) const; // w(x_v + 1) - w(x_v)
    double cover_value() const;           // sum of w(x_v) over touched nodes
    size_t distinct_nodes() const;

    double lambda() const { return lambda_; }
    CountWeightFn weight() const { return w_; }
    bool sketched() const { return sketch_.has_value(); }

private:
    CoverState(CountWeightFn w, double lambda, std::optional<CountMinSketch> sk);

    CountWeightFn w_ = nullptr;
    double lambda_ = 0.0;
    std::map<uint32_t, uint64_t> exact_; // exact mode: counts, doubles as touched set
    std::set<uint32_t> touched_;         // sketch mode: deterministic iteration
    std::optional<CountMinSketch> sketch_;
};

// chi(h) = d(h) + lambda * sum over h's nodes of the marginal weight
double marginal_gain_chi(const StaticGraph& h, const CoverState& counts);

// Best chi over subgraphs of the interval's window, found with the
// generalized incremental structure at accuracy eps_ds. Empty window
// yields a zero result.
GeneralizedResult gain_interval(const TemporalGraph& g, Interval iv,
                                const CoverState& counts, double eps_ds);

struct CoverReport {
    double chi_profit = 0.0; // DP total of interval gains
    double cover_weighted = 0.0;
    size_t cover_distinct = 0;
    double mean_jaccard = 0.0; // over unordered episode pairs
    double mean_size = 0.0;    // mean episode node-set size
};

struct KgcvrOptions {
    double lambda = 0.0;
    CountWeightFn weight = nullptr; // wins over weight_name when set
    std::string weight_name = "indicator";
    double eps_dp = 0.5;
    double eps_ds = 0.5;
    bool use_sketch = false;
    double eps_cm = 0.001;
    double delta_cm = 0.01;
    uint64_t sketch_seed = 1;
};

struct KgcvrResult {
    Segmentation seg; // episode densities are plain edge-over-node ratios
    CoverReport report;
};

// Coverage-aware segmentation: the candidate DP scored by interval gain
// under the counts accumulated along each candidate's own prefix chain.
// With lambda = 0 the trace and intervals match approx_dp_segment.
KgcvrResult kgcvr_segment(const TemporalGraph& g, int k, const KgcvrOptions& opt,
                          DpStats* stats = nullptr);

} // namespace tempo
