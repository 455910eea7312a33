#include "tempograph/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tempo {

namespace {

bool parse_i64(std::string_view s, int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

// stable sort by raw time, then first-appearance node numbering, so the
// canonical form is independent of input line order for a given time order
TemporalGraph TemporalGraph::build_canonical(std::vector<RawTriple> triples) {
    if (triples.empty()) throw ParseError(0, "empty input: no edges");

    std::stable_sort(triples.begin(), triples.end(),
                     [](const RawTriple& a, const RawTriple& b) { return a.t < b.t; });

    TemporalGraph g;
    std::unordered_map<int64_t, uint32_t> id_of;
    g.edges_.reserve(triples.size());

    auto intern = [&](int64_t label) {
        auto [it, fresh] = id_of.try_emplace(label, static_cast<uint32_t>(g.labels_.size()));
        if (fresh) g.labels_.push_back(label);
        return it->second;
    };

    for (const auto& tr : triples) {
        if (g.raw_times_.empty() || g.raw_times_.back() != tr.t) g.raw_times_.push_back(tr.t);
        g.edges_.push_back({intern(tr.u), intern(tr.v), static_cast<int32_t>(g.raw_times_.size())});
    }

    g.ts_offset_.assign(g.raw_times_.size() + 2, 0);
    for (const auto& e : g.edges_) g.ts_offset_[static_cast<size_t>(e.t) + 1]++;
    for (size_t i = 1; i < g.ts_offset_.size(); ++i) g.ts_offset_[i] += g.ts_offset_[i - 1];
    return g;
}

TemporalGraph TemporalGraph::from_triples(const std::vector<RawTriple>& triples) {
    for (const auto& tr : triples)
        if (tr.u == tr.v) throw ParseError(0, "self-loop rejected");
    return build_canonical(triples);
}

TemporalGraph TemporalGraph::parse(std::istream& in) {
    std::vector<RawTriple> triples;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;

        // commas count as separators alongside whitespace
        for (char& c : line)
            if (c == ',') c = ' ';

        std::istringstream fields(line);
        std::vector<std::string> toks;
        std::string tok;
        while (fields >> tok) toks.push_back(tok);
        if (toks.size() != 3)
            throw ParseError(lineno, "expected 3 fields (u v t), got " + std::to_string(toks.size()));

        RawTriple tr;
        if (!parse_i64(toks[0], tr.u) || !parse_i64(toks[1], tr.v) || !parse_i64(toks[2], tr.t))
            throw ParseError(lineno, "field is not an integer");
        if (tr.u == tr.v)
            throw ParseError(lineno, "self-loop rejected");
        triples.push_back(tr);
    }
    return build_canonical(std::move(triples));
}

TemporalGraph TemporalGraph::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return parse(in);
}

std::pair<size_t, size_t> TemporalGraph::edge_range(Interval iv) const {
    int32_t r = timestamp_count();
    int32_t lo = std::max<int32_t>(iv.lo, 1);
    int32_t hi = std::min<int32_t>(iv.hi, r);
    if (hi < lo) return {0, 0};
    return {ts_offset_[static_cast<size_t>(lo)], ts_offset_[static_cast<size_t>(hi) + 1]};
}

StaticGraph TemporalGraph::induced_static(Interval iv) const {
    auto [first, last] = edge_range(iv);
    std::vector<StaticGraph::Edge> pairs;
    pairs.reserve(last - first);
    for (size_t i = first; i < last; ++i) {
        uint32_t u = edges_[i].u, v = edges_[i].v;
        if (u > v) std::swap(u, v);
        pairs.emplace_back(u, v);
    }
    return StaticGraph::from_edges(std::move(pairs));
}

std::vector<StreamEdge> TemporalGraph::edge_stream(Interval iv) const {
    auto [first, last] = edge_range(iv);
    std::vector<StreamEdge> out;
    out.reserve(last - first);
    std::unordered_set<uint64_t> seen;
    for (size_t i = first; i < last; ++i) {
        uint32_t u = edges_[i].u, v = edges_[i].v;
        uint64_t key = (static_cast<uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        bool fresh = seen.insert(key).second;
        out.push_back({u, v, edges_[i].t, fresh});
    }
    return out;
}

void TemporalGraph::serialize(std::ostream& out) const {
    for (const auto& e : edges_)
        out << labels_[e.u] << ' ' << labels_[e.v] << ' '
            << raw_times_[static_cast<size_t>(e.t) - 1] << '\n';
}

} // namespace tempo
