#include "tempograph/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dp_engine.hpp"
#include "tempograph/densest.hpp"
#include "tempograph/incremental_densest.hpp"

namespace tempo {

void sprs(std::vector<SprsItem>& a, double sigma, int level, double eps, int k) {
    if (k < 1) throw std::invalid_argument("sprs: k must be >= 1");
    if (eps <= 0.0) throw std::invalid_argument("sprs: accuracy must be positive");
    if (sigma < 0.0) throw std::invalid_argument("sprs: negative profit");
    const double delta = sigma * eps / (static_cast<double>(k) +
                                        static_cast<double>(level) * eps);
    size_t j = 0;
    while (j + 2 < a.size()) {
        if (a[j + 2].cached - a[j].cached <= delta)
            a.erase(a.begin() + static_cast<ptrdiff_t>(j) + 1);
        else
            ++j;
    }
}

size_t sprs_candidate_cap(int k, double eps) {
    return 2 + static_cast<size_t>(
                   std::ceil(static_cast<double>(k) * (1.0 + eps) / eps));
}

namespace detail {

void feed_timestamp(LevelSets& inst, const TemporalGraph& g, int t) {
    auto [b, e] = g.edge_range(Interval{t, t});
    const auto& es = g.edges();
    for (size_t idx = b; idx < e; ++idx) inst.insert(es[idx].u, es[idx].v);
}

namespace {

// exact scoring: solve the interval from scratch, remembering the last query
// since value() and nodes() are asked back to back
class ExactScorer final : public IntervalScorer {
public:
    ExactScorer(const TemporalGraph& g, int start) : g_(g), start_(start) {}

    void extend_to(int i) override { cur_ = i; }

    double value() const override {
        refresh();
        return cache_.density;
    }

    std::vector<uint32_t> nodes() const override {
        refresh();
        return cache_.nodes;
    }

private:
    void refresh() const {
        if (cached_i_ == cur_) return;
        cache_ = exact_densest(g_.induced_static(Interval{start_, cur_}));
        cached_i_ = cur_;
    }

    const TemporalGraph& g_;
    int start_;
    int cur_ = 0;
    mutable int cached_i_ = -1;
    mutable DensestResult cache_;
};

class IncrementalScorer final : public IntervalScorer {
public:
    IncrementalScorer(const TemporalGraph& g, double eps_ds, NodeWeights w)
        : g_(g), inst_(LevelSets::for_accuracy(eps_ds, std::move(w))) {}

    void extend_to(int i) override { feed_timestamp(inst_, g_, i); }
    double value() const override { return inst_.reported(); }
    std::vector<uint32_t> nodes() const override { return inst_.best().nodes; }

private:
    const TemporalGraph& g_;
    LevelSets inst_;
};

class ExactScorerFactory final : public ScorerFactory {
public:
    explicit ExactScorerFactory(const TemporalGraph& g) : g_(g) {}
    std::unique_ptr<IntervalScorer> spawn(int start, const EpisodeChain*) override {
        return std::make_unique<ExactScorer>(g_, start);
    }

private:
    const TemporalGraph& g_;
};

class IncrementalScorerFactory final : public ScorerFactory {
public:
    IncrementalScorerFactory(const TemporalGraph& g, double eps_ds)
        : g_(g), eps_ds_(eps_ds) {}
    std::unique_ptr<IntervalScorer> spawn(int start, const EpisodeChain*) override {
        (void)start;
        return std::make_unique<IncrementalScorer>(g_, eps_ds_, NodeWeights{});
    }

private:
    const TemporalGraph& g_;
    double eps_ds_;
};

struct Candidate {
    int start = 0;
    double cached = 0.0; // profit of the best prefix ending at start - 1
    std::unique_ptr<IntervalScorer> scorer;
    ChainPtr prefix;
};

} // namespace

EngineOutcome run_candidate_dp(int r, int k, double eps_dp, ScorerFactory& factory,
                               DpStats* stats) {
    std::vector<double> prev_s(static_cast<size_t>(r) + 1, 0.0);
    std::vector<double> cur_s(static_cast<size_t>(r) + 1, 0.0);
    std::vector<ChainPtr> prev_chain(static_cast<size_t>(r) + 1);
    std::vector<ChainPtr> cur_chain(static_cast<size_t>(r) + 1);
    if (stats) {
        stats->table.assign(static_cast<size_t>(k), {});
        stats->max_candidates = 0;
        stats->candidate_cap = sprs_candidate_cap(k, eps_dp);
    }

    {
        auto scorer = factory.spawn(1, nullptr);
        for (int i = 1; i <= r; ++i) {
            scorer->extend_to(i);
            double v = scorer->value();
            prev_s[static_cast<size_t>(i)] = v;
            auto link = std::make_shared<EpisodeChain>();
            link->interval = Interval{1, i};
            link->nodes = scorer->nodes();
            link->value = v;
            prev_chain[static_cast<size_t>(i)] = std::move(link);
        }
        if (stats) stats->table[0] = prev_s;
    }

    std::vector<SprsItem> view;
    for (int l = 2; l <= k; ++l) {
        std::vector<Candidate> cands;
        for (int i = 1; i <= r; ++i) {
            Candidate fresh;
            fresh.start = i;
            fresh.cached = prev_s[static_cast<size_t>(i) - 1];
            fresh.prefix = prev_chain[static_cast<size_t>(i) - 1];
            fresh.scorer = factory.spawn(i, fresh.prefix.get());
            cands.push_back(std::move(fresh));

            double best_val = 0.0;
            size_t best_idx = cands.size();
            for (size_t idx = 0; idx < cands.size(); ++idx) {
                cands[idx].scorer->extend_to(i);
                double val = cands[idx].cached + cands[idx].scorer->value();
                if (best_idx == cands.size() || val > best_val) {
                    best_val = val;
                    best_idx = idx;
                }
            }

            double carry_same_row = cur_s[static_cast<size_t>(i) - 1];
            double carry_prev_row = prev_s[static_cast<size_t>(i)];
            if (best_val >= std::max(carry_same_row, carry_prev_row)) {
                cur_s[static_cast<size_t>(i)] = best_val;
                Candidate& cd = cands[best_idx];
                auto link = std::make_shared<EpisodeChain>();
                link->interval = Interval{cd.start, i};
                link->nodes = cd.scorer->nodes();
                link->value = best_val - cd.cached;
                link->prev = cd.prefix;
                cur_chain[static_cast<size_t>(i)] = std::move(link);
            } else if (carry_same_row >= carry_prev_row) {
                cur_s[static_cast<size_t>(i)] = carry_same_row;
                cur_chain[static_cast<size_t>(i)] = cur_chain[static_cast<size_t>(i) - 1];
            } else {
                cur_s[static_cast<size_t>(i)] = carry_prev_row;
                cur_chain[static_cast<size_t>(i)] = prev_chain[static_cast<size_t>(i)];
            }

            view.clear();
            for (const Candidate& cd : cands) view.push_back({cd.start, cd.cached});
            sprs(view, cur_s[static_cast<size_t>(i)], l, eps_dp, k);
            size_t keep = 0, vi = 0;
            for (size_t ci = 0; ci < cands.size(); ++ci) {
                if (vi < view.size() && cands[ci].start == view[vi].start) {
                    if (keep != ci) cands[keep] = std::move(cands[ci]);
                    ++keep;
                    ++vi;
                }
            }
            cands.resize(keep);
            if (stats) stats->max_candidates = std::max(stats->max_candidates, cands.size());
        }
        if (stats) stats->table[static_cast<size_t>(l) - 1] = cur_s;
        prev_s.swap(cur_s);
        prev_chain.swap(cur_chain);
        std::fill(cur_s.begin(), cur_s.end(), 0.0);
        for (ChainPtr& cp : cur_chain) cp.reset();
    }

    EngineOutcome out;
    out.profit = prev_s[static_cast<size_t>(r)];
    out.chain = prev_chain[static_cast<size_t>(r)];
    return out;
}

std::vector<Episode> assemble_episodes(const TemporalGraph& g, const ChainPtr& chain,
                                       int k) {
    int r = static_cast<int>(g.timestamp_count());
    std::vector<Episode> eps;
    for (const EpisodeChain* p = chain.get(); p != nullptr; p = p->prev.get()) {
        Episode e;
        e.interval = p->interval;
        e.nodes = p->nodes;
        eps.push_back(std::move(e));
    }
    std::reverse(eps.begin(), eps.end());
    if (eps.empty() || eps.front().interval.lo != 1)
        throw std::logic_error("segmentation: reconstructed chain must start at timestamp 1");

    // tile [1, r]: each right end stretches to the next start
    for (size_t j = 0; j < eps.size(); ++j) {
        int next_lo = (j + 1 < eps.size()) ? eps[j + 1].interval.lo : r + 1;
        if (eps[j].interval.hi >= next_lo)
            throw std::logic_error("segmentation: reconstructed intervals overlap");
        eps[j].interval.hi = next_lo - 1;
    }

    // carries can leave fewer than k episodes; halve the longest until the
    // count matches, scoring each half from scratch
    while (static_cast<int>(eps.size()) < k) {
        size_t pick = eps.size();
        int best_len = 1;
        for (size_t j = 0; j < eps.size(); ++j) {
            int len = eps[j].interval.length();
            if (len > best_len) {
                best_len = len;
                pick = j;
            }
        }
        if (pick == eps.size())
            throw std::logic_error("segmentation: cannot split timeline into k parts");
        Interval whole = eps[pick].interval;
        Interval left{whole.lo, whole.lo + (whole.hi - whole.lo) / 2};
        Interval right{left.hi + 1, whole.hi};
        auto solve = [&](Interval iv) {
            DensestResult dr = exact_densest(g.induced_static(iv));
            Episode e;
            e.interval = iv;
            e.nodes = std::move(dr.nodes);
            e.density = dr.density;
            return e;
        };
        Episode lhs = solve(left);
        Episode rhs = solve(right);
        eps[pick] = std::move(lhs);
        eps.insert(eps.begin() + static_cast<ptrdiff_t>(pick) + 1, std::move(rhs));
    }

    for (Episode& e : eps) {
        if (e.nodes.empty()) {
            e.density = 0.0;
            continue;
        }
        StaticGraph h = g.induced_static(e.interval);
        e.density = subgraph_density(h, e.nodes);
    }
    return eps;
}

} // namespace detail

namespace {

double episode_total(const std::vector<Episode>& eps) {
    double sum = 0.0;
    for (const Episode& e : eps) sum += e.density;
    return sum;
}

void check_instance(int k, int r) {
    if (k < 1) throw std::invalid_argument("segmentation: k must be >= 1");
    if (k > r)
        throw std::domain_error("segmentation: cannot place " + std::to_string(k) +
                                " non-empty intervals over " + std::to_string(r) +
                                " timestamps");
}

std::vector<uint32_t> replay_interval_nodes(const TemporalGraph& g, int a, int i,
                                            double eps_ds) {
    LevelSets inst = LevelSets::for_accuracy(eps_ds);
    for (int j = i; j >= a; --j) detail::feed_timestamp(inst, g, j);
    return inst.best().nodes;
}

} // namespace

Segmentation brute_force_segment(const TemporalGraph& g, int k) {
    int r = static_cast<int>(g.timestamp_count());
    check_instance(k, r);
    if (r > 20 || k > 5 || g.node_count() > 12)
        throw std::invalid_argument("brute_force_segment: instance too large");

    // enumerated densest values for every interval
    std::vector<std::vector<DensestResult>> best(
        static_cast<size_t>(r) + 1,
        std::vector<DensestResult>(static_cast<size_t>(r) + 1));
    for (int a = 1; a <= r; ++a)
        for (int i = a; i <= r; ++i)
            best[static_cast<size_t>(a)][static_cast<size_t>(i)] =
                brute_force_densest(g.induced_static(Interval{a, i}));

    // boundary vector: the right ends of the first k-1 parts, ascending
    std::vector<int> bounds(static_cast<size_t>(k) - 1);
    for (int t = 0; t < k - 1; ++t) bounds[static_cast<size_t>(t)] = t + 1;

    auto profit_of = [&](const std::vector<int>& b) {
        double sum = 0.0;
        int lo = 1;
        for (int cut : b) {
            sum += best[static_cast<size_t>(lo)][static_cast<size_t>(cut)].density;
            lo = cut + 1;
        }
        sum += best[static_cast<size_t>(lo)][static_cast<size_t>(r)].density;
        return sum;
    };
    auto advance = [&](std::vector<int>& b) {
        int m = static_cast<int>(b.size());
        for (int t = m - 1; t >= 0; --t) {
            if (b[static_cast<size_t>(t)] < r - 1 - (m - 1 - t)) {
                ++b[static_cast<size_t>(t)];
                for (int s = t + 1; s < m; ++s)
                    b[static_cast<size_t>(s)] = b[static_cast<size_t>(s) - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<int> winner = bounds;
    double best_profit = profit_of(bounds);
    while (advance(bounds)) {
        double p = profit_of(bounds);
        if (p > best_profit) {
            best_profit = p;
            winner = bounds;
        }
    }

    Segmentation seg;
    seg.k = k;
    seg.mode = "brute";
    int lo = 1;
    for (int t = 0; t <= k - 1; ++t) {
        int hi = (t < k - 1) ? winner[static_cast<size_t>(t)] : r;
        const DensestResult& dr = best[static_cast<size_t>(lo)][static_cast<size_t>(hi)];
        Episode e;
        e.interval = Interval{lo, hi};
        e.nodes = dr.nodes;
        e.density = dr.density;
        seg.episodes.push_back(std::move(e));
        lo = hi + 1;
    }
    seg.total_profit = episode_total(seg.episodes);
    return seg;
}

Segmentation exact_dp_segment(const TemporalGraph& g, int k, DensestMode densest,
                              double eps_ds, DpStats* stats) {
    int r = static_cast<int>(g.timestamp_count());
    check_instance(k, r);
    if (densest == DensestMode::Incremental && eps_ds <= 0.0)
        throw std::invalid_argument(
            "segmentation: incremental scoring needs a positive accuracy");

    std::vector<std::vector<double>> val(
        static_cast<size_t>(r) + 1, std::vector<double>(static_cast<size_t>(r) + 1, 0.0));
    if (densest == DensestMode::Exact) {
        for (int a = 1; a <= r; ++a)
            for (int i = a; i <= r; ++i)
                val[static_cast<size_t>(a)][static_cast<size_t>(i)] =
                    exact_densest(g.induced_static(Interval{a, i})).density;
    } else {
        // one pass per right end, inserting timestamps from i downward so the
        // structure only ever gains edges
        for (int i = 1; i <= r; ++i) {
            LevelSets inst = LevelSets::for_accuracy(eps_ds);
            for (int j = i; j >= 1; --j) {
                detail::feed_timestamp(inst, g, j);
                val[static_cast<size_t>(j)][static_cast<size_t>(i)] = inst.reported();
            }
        }
    }

    std::vector<std::vector<double>> table(
        static_cast<size_t>(k) + 1, std::vector<double>(static_cast<size_t>(r) + 1, 0.0));
    std::vector<std::vector<int>> start(
        static_cast<size_t>(k) + 1, std::vector<int>(static_cast<size_t>(r) + 1, 0));
    for (int i = 1; i <= r; ++i) {
        table[1][static_cast<size_t>(i)] = val[1][static_cast<size_t>(i)];
        start[1][static_cast<size_t>(i)] = 1;
    }
    for (int l = 2; l <= k; ++l) {
        for (int i = l; i <= r; ++i) {
            double best = -1.0;
            int best_start = 0;
            for (int j = l - 1; j < i; ++j) {
                double cand = table[static_cast<size_t>(l) - 1][static_cast<size_t>(j)] +
                              val[static_cast<size_t>(j) + 1][static_cast<size_t>(i)];
                if (cand > best) {
                    best = cand;
                    best_start = j + 1;
                }
            }
            table[static_cast<size_t>(l)][static_cast<size_t>(i)] = best;
            start[static_cast<size_t>(l)][static_cast<size_t>(i)] = best_start;
        }
    }
    if (stats) {
        stats->table.assign(static_cast<size_t>(k), {});
        for (int l = 1; l <= k; ++l) stats->table[static_cast<size_t>(l) - 1] = table[static_cast<size_t>(l)];
        stats->max_candidates = 0;
        stats->candidate_cap = 0;
    }

    Segmentation seg;
    seg.k = k;
    seg.eps_ds = (densest == DensestMode::Incremental) ? eps_ds : 0.0;
    seg.mode = (densest == DensestMode::Exact) ? "optimal" : "kgoptdp";
    std::vector<Interval> ivs;
    int i = r;
    for (int l = k; l >= 1; --l) {
        int a = start[static_cast<size_t>(l)][static_cast<size_t>(i)];
        ivs.push_back(Interval{a, i});
        i = a - 1;
    }
    std::reverse(ivs.begin(), ivs.end());
    for (Interval iv : ivs) {
        Episode e;
        e.interval = iv;
        if (densest == DensestMode::Exact) {
            DensestResult dr = exact_densest(g.induced_static(iv));
            e.nodes = std::move(dr.nodes);
            e.density = dr.density;
        } else {
            e.nodes = replay_interval_nodes(g, iv.lo, iv.hi, eps_ds);
            StaticGraph h = g.induced_static(iv);
            e.density = e.nodes.empty() ? 0.0 : subgraph_density(h, e.nodes);
        }
        seg.episodes.push_back(std::move(e));
    }
    seg.total_profit = episode_total(seg.episodes);
    return seg;
}

Segmentation approx_dp_segment(const TemporalGraph& g, int k, double eps_dp,
                               DensestMode densest, double eps_ds, DpStats* stats) {
    int r = static_cast<int>(g.timestamp_count());
    check_instance(k, r);
    if (eps_dp <= 0.0)
        throw std::invalid_argument("segmentation: eps_dp must be positive");
    if (densest == DensestMode::Incremental && eps_ds <= 0.0)
        throw std::invalid_argument(
            "segmentation: incremental scoring needs a positive accuracy");

    detail::EngineOutcome out;
    if (densest == DensestMode::Exact) {
        detail::ExactScorerFactory factory(g);
        out = detail::run_candidate_dp(r, k, eps_dp, factory, stats);
    } else {
        detail::IncrementalScorerFactory factory(g, eps_ds);
        out = detail::run_candidate_dp(r, k, eps_dp, factory, stats);
    }

    Segmentation seg;
    seg.episodes = detail::assemble_episodes(g, out.chain, k);
    seg.total_profit = episode_total(seg.episodes);
    seg.k = k;
    seg.eps_dp = eps_dp;
    seg.eps_ds = (densest == DensestMode::Incremental) ? eps_ds : 0.0;
    seg.mode = (densest == DensestMode::Exact) ? "kgoptds" : "kgapprox";
    return seg;
}

Segmentation post_process(const TemporalGraph& g, const Segmentation& seg) {
    Segmentation out = seg;
    for (Episode& e : out.episodes) {
        DensestResult dr = exact_densest(g.induced_static(e.interval));
        e.nodes = std::move(dr.nodes);
        e.density = dr.density;
    }
    out.total_profit = episode_total(out.episodes);
    return out;
}

} // namespace tempo
