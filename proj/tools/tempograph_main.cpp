#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "tempograph/coverage.hpp"
#include "tempograph/json_io.hpp"
#include "tempograph/segmentation.hpp"
#include "tempograph/synthetic.hpp"
#include "tempograph/temporal_graph.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

uint64_t resolve_seed(uint64_t value, bool given) {
    if (given) return value;
    if (const char* env = std::getenv("TEMPOGRAPH_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "TEMPOGRAPH_SEED must be an unsigned integer");
        }
    }
    return 1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& body) {
    if (path.empty())
        std::cout << body;
    else
        tempo::write_file_atomic(path, body);
}

struct SegmentArgs {
    std::string input;
    std::string mode = "kgapprox";
    int k = 0;
    double eps_dp = 0.1;
    double eps_ds = 0.1;
    double lambda = 0.0;
    std::string cover_fn = "indicator";
    bool post = false;
    bool sketch = false;
    double eps_cm = 0.001;
    double delta_cm = 0.01;
    uint64_t seed = 1;
    bool seed_given = false;
    std::string format = "json";
    std::string output;
};

int run_segment(const SegmentArgs& a) {
    uint64_t seed = resolve_seed(a.seed, a.seed_given);
    auto t0 = Clock::now();
    tempo::TemporalGraph g = tempo::TemporalGraph::parse_file(a.input);
    tempo::PhaseTimings tm;
    tm.parse = seconds_since(t0);

    tempo::Segmentation seg;
    tempo::CoverReport report;
    bool has_cover = false;
    auto t1 = Clock::now();
    if (a.mode == "optimal") {
        seg = tempo::exact_dp_segment(g, a.k, tempo::DensestMode::Exact);
    } else if (a.mode == "kgoptdp") {
        seg = tempo::exact_dp_segment(g, a.k, tempo::DensestMode::Incremental,
                                      a.eps_ds);
    } else if (a.mode == "kgoptds") {
        seg = tempo::approx_dp_segment(g, a.k, a.eps_dp, tempo::DensestMode::Exact);
    } else if (a.mode == "kgapprox") {
        seg = tempo::approx_dp_segment(g, a.k, a.eps_dp,
                                       tempo::DensestMode::Incremental, a.eps_ds);
    } else {
        tempo::KgcvrOptions opt;
        opt.lambda = a.lambda;
        opt.weight_name = a.cover_fn;
        opt.eps_dp = a.eps_dp;
        opt.eps_ds = a.eps_ds;
        opt.use_sketch = a.sketch;
        opt.eps_cm = a.eps_cm;
        opt.delta_cm = a.delta_cm;
        opt.sketch_seed = seed;
        tempo::KgcvrResult res = tempo::kgcvr_segment(g, a.k, opt);
        seg = std::move(res.seg);
        report = res.report;
        has_cover = true;
    }
    tm.solve = seconds_since(t1);

    auto t2 = Clock::now();
    if (a.post) seg = tempo::post_process(g, seg);
    tm.post = seconds_since(t2);
    tm.total = seconds_since(t0);

    tempo::RunParams params;
    params.mode = a.mode;
    params.k = a.k;
    params.eps_dp = a.eps_dp;
    params.eps_ds = a.eps_ds;
    params.lambda = a.lambda;
    params.cover_fn = (a.mode == "kgcvr") ? a.cover_fn : "";
    params.post_processed = a.post;
    params.sketch = a.sketch;
    params.eps_cm = a.eps_cm;
    params.delta_cm = a.delta_cm;
    params.seed = seed;
    params.input = a.input;

    std::string body = (a.format == "csv")
                           ? tempo::result_csv(g, seg)
                           : tempo::result_json(g, seg, params, tm,
                                                has_cover ? &report : nullptr);
    emit(a.output, body);
    return 0;
}

struct SynthArgs {
    tempo::SyntheticSpec spec;
    bool seed_given = false;
    std::string out_edges = "synthetic_edges.tsv";
    std::string out_truth = "synthetic_truth.json";
};

int run_synth(SynthArgs a) {
    a.spec.seed = resolve_seed(a.spec.seed, a.seed_given);
    auto [g, truth] = tempo::generate_synthetic(a.spec);
    std::ostringstream edges;
    g.serialize(edges);
    tempo::write_file_atomic(a.out_edges, edges.str());
    tempo::write_file_atomic(a.out_truth, tempo::truth_json(truth));
    std::cout << "wrote " << a.out_edges << " (" << g.edge_count() << " edges, "
              << g.node_count() << " nodes) and " << a.out_truth << " ("
              << truth.communities.size() << " communities)\n";
    return 0;
}

struct EvalArgs {
    std::string found;
    std::string truth;
    std::string output;
};

int run_eval(const EvalArgs& a) {
    std::vector<tempo::RawEpisode> episodes =
        tempo::episodes_from_result_json(slurp(a.found));
    tempo::GroundTruth truth = tempo::truth_from_json(slurp(a.truth));
    tempo::EvalMetrics m = tempo::evaluate_raw(episodes, truth);
    emit(a.output, tempo::metrics_json(episodes, m));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-densest-episodes toolkit: timeline segmentation of temporal "
                 "networks by densest-subgraph profit"};
    app.require_subcommand(1);

    SegmentArgs seg;
    CLI::App* seg_cmd = app.add_subcommand(
        "segment", "partition a temporal graph's timeline into k episodes");
    seg_cmd->add_option("input", seg.input, "edge list file: 'u v t' per line")
        ->required();
    seg_cmd->add_option("--k", seg.k, "number of episodes")->required();
    seg_cmd
        ->add_option("--mode", seg.mode,
                     "solver: optimal, kgoptdp, kgoptds, kgapprox, kgcvr")
        ->check(CLI::IsMember(
            {"optimal", "kgoptdp", "kgoptds", "kgapprox", "kgcvr"}));
    seg_cmd->add_option("--eps-dp", seg.eps_dp,
                        "profit-table accuracy for the approximate DP");
    seg_cmd->add_option("--eps-ds", seg.eps_ds,
                        "accuracy of the incremental densest-subgraph scorer");
    seg_cmd->add_option("--lambda", seg.lambda, "coverage weight (kgcvr)");
    seg_cmd->add_option("--cover-fn", seg.cover_fn, "cover weight: indicator, sqrt")
        ->check(CLI::IsMember({"indicator", "sqrt"}));
    seg_cmd->add_flag("--post-process", seg.post,
                      "re-solve each episode's subgraph exactly");
    seg_cmd->add_flag("--sketch", seg.sketch,
                      "track coverage counts with a count-min sketch (kgcvr)");
    seg_cmd->add_option("--eps-cm", seg.eps_cm, "count-min relative error");
    seg_cmd->add_option("--delta-cm", seg.delta_cm, "count-min failure probability");
    CLI::Option* seg_seed = seg_cmd->add_option(
        "--seed", seg.seed, "rng seed (else TEMPOGRAPH_SEED, else 1)");
    seg_cmd->add_option("--format", seg.format, "output format: json, csv")
        ->check(CLI::IsMember({"json", "csv"}));
    seg_cmd->add_option("--output", seg.output, "output path (default stdout)");

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand(
        "synth", "generate a planted-community benchmark graph");
    synth_cmd->add_option("--nodes", synth.spec.nodes, "node count");
    synth_cmd->add_option("--timeline", synth.spec.timeline, "timeline length");
    synth_cmd->add_option("--communities", synth.spec.communities,
                          "planted community count");
    synth_cmd->add_option("--community-size", synth.spec.community_size,
                          "nodes per community");
    synth_cmd->add_option("--community-degree", synth.spec.community_degree,
                          "target average degree inside a community");
    synth_cmd->add_option("--background-degree", synth.spec.background_degree,
                          "target average degree of the background graph");
    synth_cmd->add_option("--interval-length", synth.spec.interval_length,
                          "length of each community's interval");
    CLI::Option* synth_seed = synth_cmd->add_option(
        "--seed", synth.spec.seed, "rng seed (else TEMPOGRAPH_SEED, else 1)");
    synth_cmd->add_option("--out-edges", synth.out_edges, "edge list output path");
    synth_cmd->add_option("--out-truth", synth.out_truth,
                          "ground-truth json output path");

    EvalArgs ev;
    CLI::App* eval_cmd = app.add_subcommand(
        "eval", "score a result file against planted ground truth");
    eval_cmd->add_option("found", ev.found, "result json from segment")->required();
    eval_cmd->add_option("truth", ev.truth, "ground-truth json from synth")
        ->required();
    eval_cmd->add_option("--output", ev.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (seg_cmd->parsed()) {
            seg.seed_given = seg_seed->count() > 0;
            return run_segment(seg);
        }
        if (synth_cmd->parsed()) {
            synth.seed_given = synth_seed->count() > 0;
            return run_synth(synth);
        }
        return run_eval(ev);
    } catch (const tempo::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
