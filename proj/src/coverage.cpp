#include "tempograph/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "dp_engine.hpp"
#include "tempograph/incremental_densest.hpp"
#include "tempograph/rng.hpp"

namespace tempo {

double indicator_weight(uint64_t x) { return x > 0 ? 1.0 : 0.0; }

double sqrt_weight(uint64_t x) { return std::sqrt(static_cast<double>(x)); }

CountWeightFn cover_weight_by_name(const std::string& name) {
    if (name == "indicator") return &indicator_weight;
    if (name == "sqrt") return &sqrt_weight;
    throw std::invalid_argument("coverage: unknown weight function '" + name + "'");
}

namespace {

constexpr uint64_t kHashPrime = (uint64_t{1} << 61) - 1;

} // namespace

CountMinSketch::CountMinSketch(double eps, double delta, uint64_t seed) {
    if (!(eps > 0.0)) throw std::invalid_argument("count-min: eps must be positive");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("count-min: delta must lie in (0, 1)");
    width_ = static_cast<size_t>(std::ceil(std::exp(1.0) / eps));
    depth_ = static_cast<size_t>(std::ceil(std::log(1.0 / delta)));
    if (depth_ == 0) depth_ = 1;
    cells_.assign(width_ * depth_, 0);
    Rng rng(seed);
    hash_.reserve(depth_);
    for (size_t row = 0; row < depth_; ++row) {
        uint64_t a = 1 + rng.next_u64() % (kHashPrime - 1);
        uint64_t b = rng.next_u64() % kHashPrime;
        hash_.emplace_back(a, b);
    }
}

size_t CountMinSketch::cell_of(size_t row, uint32_t v) const {
    const auto& [a, b] = hash_[row];
    unsigned __int128 x = static_cast<unsigned __int128>(a) * v + b;
    uint64_t h = static_cast<uint64_t>(x % kHashPrime);
    return row * width_ + static_cast<size_t>(h % width_);
}

void CountMinSketch::update(uint32_t v) {
    for (size_t row = 0; row < depth_; ++row) ++cells_[cell_of(row, v)];
}

uint64_t CountMinSketch::query(uint32_t v) const {
    uint64_t best = std::numeric_limits<uint64_t>::max();
    for (size_t row = 0; row < depth_; ++row)
        best = std::min(best, cells_[cell_of(row, v)]);
    return best;
}

CoverState::CoverState(CountWeightFn w, double lambda)
    : CoverState(w, lambda, std::nullopt) {}

CoverState CoverState::with_sketch(CountWeightFn w, double lambda, double eps_cm,
                                   double delta_cm, uint64_t seed) {
    return CoverState(w, lambda, CountMinSketch(eps_cm, delta_cm, seed));
}

CoverState::CoverState(CountWeightFn w, double lambda, std::optional<CountMinSketch> sk)
    : w_(w), lambda_(lambda), sketch_(std::move(sk)) {
    if (w_ == nullptr) throw std::invalid_argument("coverage: null weight function");
    if (lambda_ < 0.0) throw std::invalid_argument("coverage: lambda must be >= 0");
}

void CoverState::add(std::span<const uint32_t> nodes) {
    for (uint32_t v : nodes) {
        if (sketch_) {
            sketch_->update(v);
            touched_.insert(v);
        } else {
            ++exact_[v];
        }
    }
}

uint64_t CoverState::count_of(uint32_t v) const {
    if (sketch_) return sketch_->query(v);
    auto it = exact_.find(v);
    return it == exact_.end() ? 0 : it->second;
}

double CoverState::marginal_of(uint32_t v) const {
    uint64_t c = count_of(v);
    return w_(c + 1) - w_(c);
}

double CoverState::cover_value() const {
    double sum = 0.0;
    if (sketch_) {
        for (uint32_t v : touched_) sum += w_(sketch_->query(v));
    } else {
        for (const auto& [v, c] : exact_) sum += w_(c);
    }
    return sum;
}

size_t CoverState::distinct_nodes() const {
    return sketch_ ? touched_.size() : exact_.size();
}

double marginal_gain_chi(const StaticGraph& h, const CoverState& counts) {
    if (h.node_count() == 0) return 0.0;
    double density = static_cast<double>(h.edge_count()) /
                     static_cast<double>(h.node_count());
    double marg = 0.0;
    for (uint32_t v : h.nodes()) marg += counts.marginal_of(v);
    return density + counts.lambda() * marg;
}

namespace {

// per-node weights from the current counts, for every id in the universe
NodeWeights weights_from_counts(const CoverState& counts, uint32_t universe) {
    NodeWeights w;
    w.lambda = counts.lambda();
    w.delta.resize(universe, 0.0);
    for (uint32_t v = 0; v < universe; ++v) w.delta[v] = counts.marginal_of(v);
    return w;
}

double jaccard(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] < b[ib]) ++ia;
        else if (b[ib] < a[ia]) ++ib;
        else { ++inter; ++ia; ++ib; }
    }
    size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

class GainScorer final : public detail::IntervalScorer {
public:
    GainScorer(const TemporalGraph& g, LevelSets inst)
        : g_(g), inst_(std::move(inst)) {}

    void extend_to(int i) override { detail::feed_timestamp(inst_, g_, i); }
    double value() const override { return inst_.reported(); }
    std::vector<uint32_t> nodes() const override { return inst_.best().nodes; }

private:
    const TemporalGraph& g_;
    LevelSets inst_;
};

class GainScorerFactory final : public detail::ScorerFactory {
public:
    GainScorerFactory(const TemporalGraph& g, const KgcvrOptions& opt, CountWeightFn w)
        : g_(g), opt_(opt), w_(w) {}

    std::unique_ptr<detail::IntervalScorer> spawn(
        int start, const detail::EpisodeChain* prefix) override {
        (void)start;
        CoverState counts =
            opt_.use_sketch
                ? CoverState::with_sketch(w_, opt_.lambda, opt_.eps_cm, opt_.delta_cm,
                                          opt_.sketch_seed)
                : CoverState(w_, opt_.lambda);
        // replay the prefix chain's selections oldest-first
        std::vector<const detail::EpisodeChain*> links;
        for (const detail::EpisodeChain* p = prefix; p != nullptr; p = p->prev.get())
            links.push_back(p);
        for (auto it = links.rbegin(); it != links.rend(); ++it)
            counts.add((*it)->nodes);
        NodeWeights wts = weights_from_counts(counts, g_.node_count());
        return std::make_unique<GainScorer>(
            g_, LevelSets::for_accuracy(opt_.eps_ds, std::move(wts)));
    }

private:
    const TemporalGraph& g_;
    const KgcvrOptions& opt_;
    CountWeightFn w_;
};

} // namespace

GeneralizedResult gain_interval(const TemporalGraph& g, Interval iv,
                                const CoverState& counts, double eps_ds) {
    if (eps_ds <= 0.0)
        throw std::invalid_argument("coverage: eps_ds must be positive");
    GeneralizedResult out;
    if (iv.empty()) return out;
    NodeWeights w = weights_from_counts(counts, g.node_count());
    LevelSets inst = LevelSets::for_accuracy(eps_ds, std::move(w));
    auto [b, e] = g.edge_range(iv);
    const auto& es = g.edges();
    for (size_t idx = b; idx < e; ++idx) inst.insert(es[idx].u, es[idx].v);
    out.nodes = inst.best().nodes;
    out.gen_density = inst.reported();
    out.density = inst.best().density;
    return out;
}

KgcvrResult kgcvr_segment(const TemporalGraph& g, int k, const KgcvrOptions& opt,
                          DpStats* stats) {
    int r = static_cast<int>(g.timestamp_count());
    if (k < 1) throw std::invalid_argument("coverage: k must be >= 1");
    if (k > r)
        throw std::domain_error("coverage: cannot place " + std::to_string(k) +
                                " non-empty intervals over " + std::to_string(r) +
                                " timestamps");
    if (opt.lambda < 0.0) throw std::invalid_argument("coverage: lambda must be >= 0");
    if (opt.eps_dp <= 0.0 || opt.eps_ds <= 0.0)
        throw std::invalid_argument("coverage: accuracies must be positive");
    CountWeightFn w = opt.weight ? opt.weight : cover_weight_by_name(opt.weight_name);

    GainScorerFactory factory(g, opt, w);
    detail::EngineOutcome out = detail::run_candidate_dp(r, k, opt.eps_dp, factory, stats);

    KgcvrResult res;
    res.seg.episodes = detail::assemble_episodes(g, out.chain, k);
    res.seg.k = k;
    res.seg.eps_dp = opt.eps_dp;
    res.seg.eps_ds = opt.eps_ds;
    res.seg.lambda = opt.lambda;
    res.seg.mode = "kgcvr";
    double total = 0.0;
    for (const Episode& e : res.seg.episodes) total += e.density;
    res.seg.total_profit = total;

    res.report.chi_profit = out.profit;
    // reporting always uses exact counts, even when the DP ran sketched
    CoverState final_counts(w, opt.lambda);
    double size_sum = 0.0;
    for (const Episode& e : res.seg.episodes) {
        final_counts.add(e.nodes);
        size_sum += static_cast<double>(e.nodes.size());
    }
    res.report.cover_weighted = final_counts.cover_value();
    res.report.cover_distinct = final_counts.distinct_nodes();
    res.report.mean_size =
        res.seg.episodes.empty()
            ? 0.0
            : size_sum / static_cast<double>(res.seg.episodes.size());

    double jsum = 0.0;
    size_t pairs = 0;
    for (size_t a = 0; a < res.seg.episodes.size(); ++a) {
        for (size_t b = a + 1; b < res.seg.episodes.size(); ++b) {
            ++pairs;
            jsum += jaccard(res.seg.episodes[a].nodes, res.seg.episodes[b].nodes);
        }
    }
    res.report.mean_jaccard = pairs ? jsum / static_cast<double>(pairs) : 0.0;
    return res;
}

} // namespace tempo
