#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempograph/static_graph.hpp"

namespace tempo {

// Error for malformed edge-list input. line is 1-based, 0 when the problem
// is not tied to a specific line (e.g. empty input).
class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

// Closed interval of timestamp indices, 1-based. hi < lo means empty.
struct Interval {
    int32_t lo = 1;
    int32_t hi = 0;
    bool empty() const { return hi < lo; }
    int32_t length() const { return empty() ? 0 : hi - lo + 1; }
    bool operator==(const Interval&) const = default;
};

struct TemporalEdge {
    uint32_t u = 0;
    uint32_t v = 0;
    int32_t t = 0; // timestamp index, 1..r
    bool operator==(const TemporalEdge&) const = default;
};

// Edge yielded by edge_stream. first_occurrence is false for repeats of a
// static pair already seen earlier in the same stream.
struct StreamEdge {
    uint32_t u = 0;
    uint32_t v = 0;
    int32_t t = 0;
    bool first_occurrence = true;
};

struct RawTriple {
    int64_t u = 0;
    int64_t v = 0;
    int64_t t = 0;
};

// Timestamped interaction network. Input labels and times are arbitrary
// 64-bit integers; internally nodes are remapped to 0..n-1 and timestamps
// compressed to contiguous indices 1..r (every index carries at least one
// edge). The label and raw-time mappings are retained for output.
//
// Canonical form: edges sorted by raw time (stable, so same-time edges keep
// input order) and node ids assigned by first appearance in that sorted
// stream. This makes serialize/parse a lossless round trip.
class TemporalGraph {
public:
    TemporalGraph() = default;

    // Parses "u v t" per line; '#' lines are comments, blank lines skipped,
    // fields separated by whitespace and/or commas. Throws ParseError on
    // malformed lines, self-loops, or empty input.
    static TemporalGraph parse(std::istream& in);
    static TemporalGraph parse_file(const std::string& path);
    static TemporalGraph from_triples(const std::vector<RawTriple>& triples);

    uint32_t node_count() const { return static_cast<uint32_t>(labels_.size()); }
    size_t edge_count() const { return edges_.size(); }
    int32_t timestamp_count() const { return static_cast<int32_t>(raw_times_.size()); }

    const std::vector<TemporalEdge>& edges() const { return edges_; }

    int64_t raw_time(int32_t idx) const { return raw_times_.at(static_cast<size_t>(idx - 1)); }
    int64_t label(uint32_t id) const { return labels_.at(id); }
    const std::vector<int64_t>& labels() const { return labels_; }

    // [first, last) positions in edges() whose timestamp index lies in iv
    std::pair<size_t, size_t> edge_range(Interval iv) const;

    // Static graph on the edges occurring within iv; nodes are the endpoints
    // of those edges, static pairs deduplicated. Empty interval -> empty graph.
    StaticGraph induced_static(Interval iv) const;

    // Edges of iv in non-decreasing timestamp order with repeat flags.
    std::vector<StreamEdge> edge_stream(Interval iv) const;

    // Writes "label_u label_v raw_t" lines in canonical order.
    void serialize(std::ostream& out) const;

    bool operator==(const TemporalGraph&) const = default;

private:
    static TemporalGraph build_canonical(std::vector<RawTriple> triples);

    std::vector<TemporalEdge> edges_; // sorted by t
    std::vector<int64_t> raw_times_;  // index i -> raw time of timestamp i+1
    std::vector<int64_t> labels_;     // internal id -> input label
    std::vector<size_t> ts_offset_;   // ts_offset_[t] = first edge index with index >= t; size r+2
};

} // namespace tempo
