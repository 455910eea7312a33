#include "tempograph/incremental_densest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "local_view.hpp"

namespace tempo {

namespace {

uint64_t edge_key(uint32_t u, uint32_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(u) << 32) | v;
}

// rounds per pruning pass: smallest k with (1+eps)^k >= n, nudged upward
// when the float log lands a hair short of the true ceiling
int rounds_for(size_t n, double eps) {
    if (n <= 1) return 1;
    int k = static_cast<int>(
        std::ceil(std::log(static_cast<double>(n)) / std::log1p(eps)));
    k = std::max(k, 1);
    while (std::pow(1.0 + eps, k) < static_cast<double>(n)) ++k;
    return k;
}

struct PassResult {
    bool survived = false;          // some node withstood all k rounds
    std::vector<uint32_t> best_nodes; // local ids of the best intermediate
    double best_value = 0.0;        // its generalized density
    double best_plain = 0.0;        // its plain density
};

// One pruning pass over local adjacency. delta must have one entry per
// local node. levels_out (same size) records how many rounds each node
// survived; stripped nodes keep the index of the round that removed them.
PassResult strip_rounds(const std::vector<std::vector<uint32_t>>& adj,
                        const std::vector<double>& delta, double lambda,
                        double beta, double eps, int k,
                        std::vector<int>* levels_out) {
    size_t n = adj.size();
    PassResult res;
    if (levels_out) levels_out->assign(n, 0);
    if (n == 0) return res;

    std::vector<char> alive(n, 1);
    std::vector<uint32_t> cur(n);
    for (uint32_t v = 0; v < n; ++v) cur[v] = v;

    size_t edges_in = 0;
    double sum_delta = 0.0;
    for (uint32_t v = 0; v < n; ++v) {
        edges_in += adj[v].size();
        sum_delta += delta[v];
    }
    edges_in /= 2;

    double best = static_cast<double>(edges_in) / static_cast<double>(n) +
                  lambda * sum_delta;
    double best_plain = static_cast<double>(edges_in) / static_cast<double>(n);
    std::vector<uint32_t> best_nodes = cur;

    const double threshold = 2.0 * (1.0 + eps) * beta;
    for (int t = 0; t < k && !cur.empty(); ++t) {
        std::vector<uint32_t> next;
        next.reserve(cur.size());
        for (uint32_t v : cur) {
            size_t deg = 0;
            for (uint32_t x : adj[v]) deg += alive[x];
            double da = static_cast<double>(deg) +
                        2.0 * lambda * static_cast<double>(cur.size()) * delta[v];
            if (da >= threshold) next.push_back(v);
        }
        for (uint32_t v : cur) alive[v] = 0;
        for (uint32_t v : next) alive[v] = 1;
        if (levels_out)
            for (uint32_t v : next) (*levels_out)[v] = t + 1;

        if (!next.empty()) {
            size_t e2 = 0;
            double sd2 = 0.0;
            for (uint32_t v : next) {
                size_t deg = 0;
                for (uint32_t x : adj[v]) deg += alive[x];
                e2 += deg;
                sd2 += delta[v];
            }
            e2 /= 2;
            double val = static_cast<double>(e2) / static_cast<double>(next.size()) +
                         lambda * sd2;
            if (val > best) {
                best = val;
                best_plain = static_cast<double>(e2) / static_cast<double>(next.size());
                best_nodes = next;
            }
        }
        cur.swap(next);
    }

    res.survived = !cur.empty();
    res.best_value = best;
    res.best_plain = best_plain;
    res.best_nodes = std::move(best_nodes);
    return res;
}

std::vector<double> materialize_delta(const LocalView& view, const NodeWeights& w) {
    std::vector<double> delta(view.global.size(), 0.0);
    if (w.lambda > 0.0)
        for (size_t l = 0; l < view.global.size(); ++l)
            delta[l] = w.delta_of(view.global[l]);
    return delta;
}

double ladder_floor(double eps) { return 1.0 / (4.0 * (1.0 + eps)); }

} // namespace

GeneralizedResult find(const StaticGraph& g, double beta, double eps,
                       const NodeWeights& w) {
    if (eps <= 0.0) throw std::invalid_argument("find: accuracy must be positive");
    if (beta <= 0.0) throw std::invalid_argument("find: profit guess must be positive");
    w.validate();
    if (g.empty()) return {};

    LocalView view(g);
    std::vector<double> delta = materialize_delta(view, w);
    int k = rounds_for(view.global.size(), eps);
    PassResult pr = strip_rounds(view.adj, delta, w.lambda, beta, eps, k, nullptr);

    GeneralizedResult res;
    res.nodes = to_global(view, pr.best_nodes);
    res.gen_density = pr.best_value;
    res.density = pr.best_plain;
    return res;
}

FindDensestOutcome find_densest(const StaticGraph& g, double eps, double rho,
                                const NodeWeights& w) {
    if (eps <= 0.0)
        throw std::invalid_argument("find_densest: accuracy must be positive");
    if (rho < 0.0)
        throw std::invalid_argument("find_densest: negative lower bound");
    w.validate();

    FindDensestOutcome out;
    if (g.empty()) {
        out.beta = ladder_floor(eps);
        return out;
    }

    LocalView view(g);
    std::vector<double> delta = materialize_delta(view, w);
    double sum_delta = 0.0;
    for (double d : delta) sum_delta += d;
    size_t n = view.global.size();
    int k = rounds_for(n, eps);

    const double floor = ladder_floor(eps);
    double beta = std::max(floor, (1.0 + eps) * rho);
    bool warm = beta > floor;

    // every successful pass raises beta by at least (1+eps), so the climb
    // from the floor past the largest possible value is bounded
    double top = static_cast<double>(n) / 2.0 + w.lambda * sum_delta + 1.0;
    int max_iter = 10 + 2 * static_cast<int>(std::ceil(
                            std::log(top / floor) / std::log1p(eps)));

    GeneralizedResult best;
    std::vector<int> levels;
    for (int iter = 0;; ++iter) {
        if (iter > max_iter)
            throw std::logic_error("find_densest: guess ladder failed to terminate");
        PassResult pr = strip_rounds(view.adj, delta, w.lambda, beta, eps, k, &levels);
        if (best.nodes.empty() || pr.best_value > best.gen_density) {
            best.nodes = to_global(view, pr.best_nodes);
            best.gen_density = pr.best_value;
            best.density = pr.best_plain;
        }
        if (pr.survived) {
            beta = (1.0 + eps) * pr.best_value;
            continue;
        }
        if (warm && iter == 0) {
            // the warm-start guess overshot; restart from the floor so the
            // approximation guarantee holds without trusting rho
            warm = false;
            beta = floor;
            continue;
        }
        out.beta = beta;
        out.best = std::move(best);
        out.levels = std::move(levels);
        out.level_count = k;
        return out;
    }
}

LevelSets::LevelSets(double eps, NodeWeights w)
    : eps_(eps), weights_(std::move(w)) {
    if (eps_ <= 0.0)
        throw std::invalid_argument("level sets: accuracy must be positive");
    weights_.validate();
}

LevelSets LevelSets::for_accuracy(double eps, NodeWeights w) {
    if (eps <= 0.0)
        throw std::invalid_argument("level sets: accuracy must be positive");
    return LevelSets(std::sqrt(1.0 + eps) - 1.0, std::move(w));
}

void LevelSets::ensure_node(uint32_t v) {
    if (v >= present_.size()) {
        size_t ns = static_cast<size_t>(v) + 1;
        present_.resize(ns, 0);
        level_.resize(ns, -1);
        adj_.resize(ns);
        in_stack_.resize(ns, 0);
    }
    if (!present_[v]) {
        present_[v] = 1;
        level_[v] = 0;
        ++node_count_;
        k_ = rounds_for(node_count_, eps_);
        if (set_size_.size() < static_cast<size_t>(k_) + 1)
            set_size_.resize(static_cast<size_t>(k_) + 1, 0);
        set_size_[0]++;
    }
}

double LevelSets::augmented_degree(uint32_t v, int t, bool joining) const {
    size_t deg = 0;
    for (uint32_t x : adj_[v]) deg += (level_[x] >= t);
    double members = static_cast<double>(set_size_[static_cast<size_t>(t)]) +
                     (joining ? 1.0 : 0.0);
    return static_cast<double>(deg) +
           2.0 * weights_.lambda * members * weights_.delta_of(v);
}

void LevelSets::push(uint32_t v, std::vector<uint32_t>& stack) {
    if (!in_stack_[v]) {
        in_stack_[v] = 1;
        stack.push_back(v);
    }
}

bool LevelSets::add_edge(uint32_t u, uint32_t v) {
    if (u == v) throw std::invalid_argument("level sets: self loop");
    uint64_t key = edge_key(u, v);
    if (edge_keys_.count(key)) return false;

    size_t nodes_before = node_count_;
    ensure_node(u);
    ensure_node(v);
    bool grew = node_count_ != nodes_before;
    edge_keys_.insert(key);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edge_count_;
    ++stats_.edges_inserted;
    stats_.last_insert_pushed_all = false;

    if (!built_) return true;

    std::vector<uint32_t> stack;
    if (grew) {
        // a fresh node shifts every |V|-dependent weight term, so everything
        // gets rechecked
        stats_.last_insert_pushed_all = true;
        for (uint32_t x = 0; x < present_.size(); ++x)
            if (present_[x]) push(x, stack);
    } else {
        push(u, stack);
        push(v, stack);
    }
    return process_stack(stack);
}

bool LevelSets::process_stack(std::vector<uint32_t>& stack) {
    const double threshold = 2.0 * (1.0 + eps_) * beta_;
    while (!stack.empty()) {
        uint32_t w = stack.back();
        stack.pop_back();
        in_stack_[w] = 0;
        int t = level_[w];
        if (t >= k_) {
            for (uint32_t x : stack) in_stack_[x] = 0;
            return true;
        }
        if (augmented_degree(w, t, false) < threshold) continue;

        // rise to the first level whose threshold the node cannot meet
        int t2 = t + 1;
        while (t2 < k_ && augmented_degree(w, t2, true) >= threshold) ++t2;
        level_[w] = t2;
        for (int j = t + 1; j <= t2; ++j) set_size_[static_cast<size_t>(j)]++;
        ++stats_.promotions;
        if (t2 >= k_) {
            // the failure certificate for the current beta is gone
            for (uint32_t x : stack) in_stack_[x] = 0;
            return true;
        }

        // the sets the node just joined grew: recheck neighbors settled
        // there, and with node weights every weighted node settled there
        for (uint32_t x : adj_[w]) {
            int lx = level_[x];
            if (lx > t && lx <= t2) push(x, stack);
        }
        if (weights_.lambda > 0.0) {
            for (uint32_t y = 0; y < present_.size(); ++y) {
                if (!present_[y] || y == w || weights_.delta_of(y) <= 0.0) continue;
                int ly = level_[y];
                if (ly > t && ly <= t2) push(y, stack);
            }
        }
    }
    return false;
}

void LevelSets::harvest_level_sets() {
    // walk levels top-down, adding each level's nodes and the edges they
    // bring, and record the best suffix set; the rebuild trigger guarantees
    // one of them reaches the maintained beta
    int top = 0;
    for (uint32_t v = 0; v < present_.size(); ++v)
        if (present_[v]) top = std::max(top, level_[v]);

    std::vector<std::vector<uint32_t>> by_level(static_cast<size_t>(top) + 1);
    for (uint32_t v = 0; v < present_.size(); ++v)
        if (present_[v]) by_level[static_cast<size_t>(level_[v])].push_back(v);

    std::vector<char> member(present_.size(), 0);
    size_t nodes = 0, edges = 0;
    double sdelta = 0.0;
    double best_val = -1.0;
    int best_level = top;
    for (int t = top; t >= 0; --t) {
        for (uint32_t v : by_level[static_cast<size_t>(t)]) {
            for (uint32_t x : adj_[v]) edges += member[x];
            member[v] = 1;
            ++nodes;
            sdelta += weights_.delta_of(v);
        }
        if (nodes == 0) continue;
        double val = static_cast<double>(edges) / static_cast<double>(nodes) +
                     weights_.lambda * sdelta;
        if (val > best_val) {
            best_val = val;
            best_level = t;
        }
    }
    if (best_val < 0.0) return;

    std::vector<uint32_t> set;
    size_t e_in = 0;
    std::fill(member.begin(), member.end(), 0);
    for (uint32_t v = 0; v < present_.size(); ++v)
        if (present_[v] && level_[v] >= best_level) {
            for (uint32_t x : adj_[v]) e_in += member[x];
            member[v] = 1;
            set.push_back(v);
        }
    double plain = set.empty() ? 0.0
                               : static_cast<double>(e_in) / static_cast<double>(set.size());
    best_.update(best_val, plain, std::move(set));
}

void LevelSets::rebuild() {
    ++stats_.rebuilds;
    if (node_count_ == 0) {
        beta_ = ladder_floor(eps_);
        k_ = 0;
        set_size_.assign(1, 0);
        built_ = true;
        return;
    }

    if (built_) harvest_level_sets();
    if (!best_.nodes.empty()) {
        // the snapshot set can only have gained edges since it was taken
        std::vector<char> member(present_.size(), 0);
        for (uint32_t v : best_.nodes) member[v] = 1;
        size_t e_in = 0;
        double sdelta = 0.0;
        for (uint32_t v : best_.nodes) {
            for (uint32_t x : adj_[v]) e_in += (x < v && member[x]) ? 1 : 0;
            sdelta += weights_.delta_of(v);
        }
        double plain = static_cast<double>(e_in) / static_cast<double>(best_.nodes.size());
        best_.update(plain + weights_.lambda * sdelta, plain,
                     std::vector<uint32_t>(best_.nodes));
    }

    StaticGraph g = snapshot_graph();
    FindDensestOutcome out = find_densest(g, eps_, best_.value, weights_);
    best_.update(out.best.gen_density, out.best.density, std::move(out.best.nodes));

    beta_ = out.beta;
    k_ = out.level_count;
    const auto& ns = g.nodes();
    for (size_t idx = 0; idx < ns.size(); ++idx)
        level_[ns[idx]] = out.levels[idx];
    set_size_.assign(static_cast<size_t>(k_) + 1, 0);
    for (uint32_t v = 0; v < present_.size(); ++v)
        if (present_[v])
            for (int j = 0; j <= level_[v]; ++j) set_size_[static_cast<size_t>(j)]++;
    built_ = true;
}

bool LevelSets::insert(uint32_t u, uint32_t v) {
    size_t before = edge_count_;
    if (add_edge(u, v)) rebuild();
    return edge_count_ != before;
}

int LevelSets::level_of(uint32_t v) const {
    if (v >= present_.size() || !present_[v]) return -1;
    return level_[v];
}

std::vector<uint32_t> LevelSets::level_set(int t) const {
    std::vector<uint32_t> out;
    for (uint32_t v = 0; v < present_.size(); ++v)
        if (present_[v] && level_[v] >= t) out.push_back(v);
    return out;
}

StaticGraph LevelSets::snapshot_graph() const {
    std::vector<uint32_t> nodes;
    nodes.reserve(node_count_);
    std::vector<StaticGraph::Edge> edges;
    edges.reserve(edge_count_);
    for (uint32_t u = 0; u < present_.size(); ++u) {
        if (!present_[u]) continue;
        nodes.push_back(u);
        for (uint32_t x : adj_[u])
            if (u < x) edges.emplace_back(u, x);
    }
    return StaticGraph(std::move(nodes), std::move(edges));
}

bool LevelSets::audit_consistent() const {
    if (!built_) return node_count_ == 0;
    if (k_ < 1) return node_count_ == 0;

    std::vector<size_t> recount(static_cast<size_t>(k_) + 1, 0);
    for (uint32_t v = 0; v < present_.size(); ++v) {
        if (!present_[v]) continue;
        int t = level_[v];
        if (t < 0 || t >= k_) return false;
        for (int j = 0; j <= t; ++j) recount[static_cast<size_t>(j)]++;
    }
    if (recount != set_size_) return false;
    if (set_size_[static_cast<size_t>(k_)] != 0) return false;

    const double threshold = 2.0 * (1.0 + eps_) * beta_;
    for (uint32_t v = 0; v < present_.size(); ++v) {
        if (!present_[v]) continue;
        int t = level_[v];
        if (augmented_degree(v, t, false) >= threshold) return false;
        if (t > 0 && augmented_degree(v, t - 1, false) < threshold) return false;
    }
    return true;
}

std::vector<MonotoneBest> update_stream(
    std::span<const std::pair<uint32_t, uint32_t>> edges, double eps,
    const NodeWeights& w) {
    LevelSets state = LevelSets::for_accuracy(eps, w);
    std::vector<MonotoneBest> out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        state.insert(u, v);
        out.push_back(state.best());
    }
    return out;
}

} // namespace tempo
