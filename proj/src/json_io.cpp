#include "tempograph/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tempo {

namespace {

using nlohmann::json;

std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "0";
    return std::string(buf, ptr);
}

double jaccard_labels(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0, ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] < b[ib]) ++ia;
        else if (b[ib] < a[ia]) ++ib;
        else { ++inter; ++ia; ++ib; }
    }
    size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace

std::string result_json(const TemporalGraph& g, const Segmentation& seg,
                        const RunParams& params, const PhaseTimings& timings,
                        const CoverReport* cover) {
    json doc;
    doc["parameters"] = {
        {"mode", params.mode},
        {"k", params.k},
        {"eps_dp", params.eps_dp},
        {"eps_ds", params.eps_ds},
        {"lambda", params.lambda},
        {"cover_fn", params.cover_fn},
        {"post_processed", params.post_processed},
        {"sketch", params.sketch},
        {"eps_cm", params.eps_cm},
        {"delta_cm", params.delta_cm},
        {"seed", params.seed},
        {"input", params.input},
    };
    doc["episodes"] = json::array();
    for (const RawEpisode& re : to_raw_episodes(g, seg)) {
        json ep;
        ep["start"] = re.start;
        ep["end"] = re.end;
        ep["density"] = re.density;
        ep["size"] = re.labels.size();
        ep["nodes"] = re.labels;
        doc["episodes"].push_back(std::move(ep));
    }
    doc["total_profit"] = seg.total_profit;
    doc["timings"] = {
        {"parse_s", timings.parse},
        {"solve_s", timings.solve},
        {"post_s", timings.post},
        {"total_s", timings.total},
    };
    if (cover) {
        doc["cover_report"] = {
            {"chi_profit", cover->chi_profit},
            {"cover_weighted", cover->cover_weighted},
            {"cover_distinct", cover->cover_distinct},
            {"mean_jaccard", cover->mean_jaccard},
            {"mean_size", cover->mean_size},
        };
    }
    return doc.dump(2) + "\n";
}

std::string result_csv(const TemporalGraph& g, const Segmentation& seg) {
    std::string out = "start,end,density,size,nodes\n";
    for (const RawEpisode& re : to_raw_episodes(g, seg)) {
        out += std::to_string(re.start);
        out += ',';
        out += std::to_string(re.end);
        out += ',';
        out += shortest(re.density);
        out += ',';
        out += std::to_string(re.labels.size());
        out += ',';
        for (size_t i = 0; i < re.labels.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(re.labels[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<RawEpisode> episodes_from_result_json(const std::string& text) {
    try {
        json doc = json::parse(text);
        std::vector<RawEpisode> out;
        for (const json& ep : doc.at("episodes")) {
            RawEpisode re;
            re.start = ep.at("start").get<int64_t>();
            re.end = ep.at("end").get<int64_t>();
            re.density = ep.at("density").get<double>();
            for (const json& v : ep.at("nodes")) re.labels.push_back(v.get<int64_t>());
            std::sort(re.labels.begin(), re.labels.end());
            out.push_back(std::move(re));
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("result json: ") + e.what());
    }
}

std::string truth_json(const GroundTruth& truth) {
    json doc;
    doc["communities"] = json::array();
    for (const PlantedCommunity& pc : truth.communities) {
        json c;
        c["start"] = pc.start;
        c["end"] = pc.end;
        c["nodes"] = pc.nodes;
        doc["communities"].push_back(std::move(c));
    }
    return doc.dump(2) + "\n";
}

GroundTruth truth_from_json(const std::string& text) {
    try {
        json doc = json::parse(text);
        GroundTruth truth;
        for (const json& c : doc.at("communities")) {
            PlantedCommunity pc;
            pc.start = c.at("start").get<int64_t>();
            pc.end = c.at("end").get<int64_t>();
            for (const json& v : c.at("nodes")) pc.nodes.push_back(v.get<int64_t>());
            std::sort(pc.nodes.begin(), pc.nodes.end());
            truth.communities.push_back(std::move(pc));
        }
        return truth;
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("ground-truth json: ") + e.what());
    }
}

std::string metrics_json(const std::vector<RawEpisode>& found,
                         const EvalMetrics& metrics) {
    json doc;
    doc["communities"] = json::array();
    for (const MatchScore& ms : metrics.matches) {
        doc["communities"].push_back({
            {"episode", ms.episode},
            {"precision", ms.precision},
            {"recall", ms.recall},
            {"f1", ms.f1},
        });
    }
    doc["mean_precision"] = metrics.mean_precision;
    doc["mean_recall"] = metrics.mean_recall;
    doc["mean_f1"] = metrics.mean_f1;
    json matrix = json::array();
    for (size_t a = 0; a < found.size(); ++a) {
        json row = json::array();
        for (size_t b = 0; b < found.size(); ++b)
            row.push_back(jaccard_labels(found[a].labels, found[b].labels));
        matrix.push_back(std::move(row));
    }
    doc["jaccard_matrix"] = std::move(matrix);
    doc["mean_jaccard"] = metrics.mean_jaccard;
    doc["cover_distinct"] = metrics.cover_distinct;
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dest(path);
    fs::path tmp = dest;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.exceptions(std::ios::failbit | std::ios::badbit);
        out << content;
        out.flush();
    }
    std::error_code ec;
    fs::rename(tmp, dest, ec);
    if (ec) {
        std::error_code drop;
        fs::remove(tmp, drop);
        throw std::ios_base::failure("cannot move temp file onto " + path + ": " +
                                     ec.message());
    }
}

} // namespace tempo
