#include "tempograph/synthetic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "tempograph/rng.hpp"

namespace tempo {

namespace {

// ER edges over the label range [base, base + count), one uniform timestamp
// from the window per accepted edge
void sprinkle_er(std::vector<RawTriple>& out, Rng& rng, int64_t base, uint32_t count,
                 double avg_degree, int64_t t_lo, int64_t t_hi) {
    if (count < 2 || avg_degree == 0.0) return;
    double p = avg_degree / static_cast<double>(count - 1);
    for (uint32_t i = 0; i < count; ++i) {
        for (uint32_t j = i + 1; j < count; ++j) {
            if (!rng.bernoulli(p)) continue;
            RawTriple tr;
            tr.u = base + i;
            tr.v = base + j;
            tr.t = rng.range(t_lo, t_hi);
            out.push_back(tr);
        }
    }
}

size_t intersect_size(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    size_t n = 0, ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] < b[ib]) ++ia;
        else if (b[ib] < a[ia]) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

} // namespace

std::pair<TemporalGraph, GroundTruth> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.nodes < 1) throw std::domain_error("synthetic: need at least one node");
    if (spec.timeline < 1) throw std::domain_error("synthetic: timeline must be >= 1");
    if (spec.communities < 0)
        throw std::domain_error("synthetic: community count must be >= 0");
    if (spec.background_degree < 0.0 || spec.community_degree < 0.0)
        throw std::domain_error("synthetic: degrees must be >= 0");
    if (spec.nodes > 1 &&
        spec.background_degree > static_cast<double>(spec.nodes - 1))
        throw std::domain_error("synthetic: background degree exceeds n - 1");
    if (spec.communities > 0) {
        if (spec.community_size < 1)
            throw std::domain_error("synthetic: community size must be >= 1");
        if (spec.interval_length < 1)
            throw std::domain_error("synthetic: interval length must be >= 1");
        if (spec.community_size > 1 &&
            spec.community_degree > static_cast<double>(spec.community_size - 1))
            throw std::domain_error("synthetic: community degree exceeds size - 1");
        uint64_t need_nodes =
            static_cast<uint64_t>(spec.communities) * spec.community_size;
        if (need_nodes > spec.nodes)
            throw std::domain_error("synthetic: communities need " +
                                    std::to_string(need_nodes) + " nodes, have " +
                                    std::to_string(spec.nodes));
        int64_t need_time =
            static_cast<int64_t>(spec.communities) * spec.interval_length;
        if (need_time > spec.timeline)
            throw std::domain_error("synthetic: intervals need " +
                                    std::to_string(need_time) + " timestamps, have " +
                                    std::to_string(spec.timeline));
    }

    Rng rng(spec.seed);
    std::vector<RawTriple> triples;
    sprinkle_er(triples, rng, 0, spec.nodes, spec.background_degree, 1, spec.timeline);

    GroundTruth truth;
    for (int c = 0; c < spec.communities; ++c) {
        // slot c of the evenly divided timeline, interval jittered inside it
        int64_t slot_lo = spec.timeline * c / spec.communities + 1;
        int64_t slot_hi = spec.timeline * (c + 1) / spec.communities;
        int64_t slack = slot_hi - slot_lo + 1 - spec.interval_length;
        int64_t start = slot_lo + (slack > 0 ? rng.range(0, slack) : 0);
        int64_t end = start + spec.interval_length - 1;

        int64_t base = static_cast<int64_t>(c) * spec.community_size;
        sprinkle_er(triples, rng, base, spec.community_size, spec.community_degree,
                    start, end);

        PlantedCommunity pc;
        pc.start = start;
        pc.end = end;
        for (uint32_t i = 0; i < spec.community_size; ++i)
            pc.nodes.push_back(base + i);
        truth.communities.push_back(std::move(pc));
    }

    if (triples.empty())
        throw std::domain_error(
            "synthetic: spec produced no edges; raise a degree parameter");
    return {TemporalGraph::from_triples(triples), std::move(truth)};
}

std::vector<RawEpisode> to_raw_episodes(const TemporalGraph& g,
                                        const Segmentation& seg) {
    std::vector<RawEpisode> out;
    out.reserve(seg.episodes.size());
    for (const Episode& e : seg.episodes) {
        RawEpisode re;
        re.density = e.density;
        re.labels.reserve(e.nodes.size());
        for (uint32_t id : e.nodes) re.labels.push_back(g.label(id));
        std::sort(re.labels.begin(), re.labels.end());
        if (e.interval.empty()) {
            re.start = 0;
            re.end = -1;
        } else {
            re.start = g.raw_time(e.interval.lo);
            re.end = g.raw_time(e.interval.hi);
        }
        out.push_back(std::move(re));
    }
    return out;
}

EvalMetrics evaluate_raw(const std::vector<RawEpisode>& found,
                         const GroundTruth& truth) {
    EvalMetrics m;
    for (const PlantedCommunity& pc : truth.communities) {
        MatchScore ms;
        int64_t best_overlap = 0;
        for (size_t j = 0; j < found.size(); ++j) {
            int64_t overlap = std::min(found[j].end, pc.end) -
                              std::max(found[j].start, pc.start) + 1;
            if (overlap > best_overlap) {
                best_overlap = overlap;
                ms.episode = static_cast<int>(j);
            }
        }
        if (ms.episode >= 0) {
            const std::vector<int64_t>& fs =
                found[static_cast<size_t>(ms.episode)].labels;
            size_t inter = intersect_size(fs, pc.nodes);
            ms.precision = fs.empty() ? 0.0
                                      : static_cast<double>(inter) /
                                            static_cast<double>(fs.size());
            ms.recall = pc.nodes.empty() ? 0.0
                                         : static_cast<double>(inter) /
                                               static_cast<double>(pc.nodes.size());
            ms.f1 = (ms.precision + ms.recall > 0.0)
                        ? 2.0 * ms.precision * ms.recall / (ms.precision + ms.recall)
                        : 0.0;
        }
        m.mean_precision += ms.precision;
        m.mean_recall += ms.recall;
        m.mean_f1 += ms.f1;
        m.matches.push_back(ms);
    }
    if (!m.matches.empty()) {
        double n = static_cast<double>(m.matches.size());
        m.mean_precision /= n;
        m.mean_recall /= n;
        m.mean_f1 /= n;
    }

    double jsum = 0.0;
    size_t pairs = 0;
    for (size_t a = 0; a < found.size(); ++a) {
        for (size_t b = a + 1; b < found.size(); ++b) {
            ++pairs;
            size_t inter = intersect_size(found[a].labels, found[b].labels);
            size_t uni = found[a].labels.size() + found[b].labels.size() - inter;
            if (uni > 0) jsum += static_cast<double>(inter) / static_cast<double>(uni);
        }
    }
    m.mean_jaccard = pairs ? jsum / static_cast<double>(pairs) : 0.0;

    std::set<int64_t> distinct;
    for (const RawEpisode& re : found)
        distinct.insert(re.labels.begin(), re.labels.end());
    m.cover_distinct = distinct.size();
    return m;
}

EvalMetrics evaluate_episodes(const TemporalGraph& g, const Segmentation& found,
                              const GroundTruth& truth) {
    return evaluate_raw(to_raw_episodes(g, found), truth);
}

} // namespace tempo
