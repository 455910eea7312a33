#include "tempograph/maxflow.hpp"

#include <algorithm>
#include <queue>

namespace tempo {

int MaxFlow::add_edge(int from, int to, int64_t cap, int64_t rev_cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, head_[static_cast<size_t>(from)], cap});
    head_[static_cast<size_t>(from)] = id;
    arcs_.push_back({from, head_[static_cast<size_t>(to)], rev_cap});
    head_[static_cast<size_t>(to)] = id + 1;
    return id;
}

bool MaxFlow::bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int e = head_[static_cast<size_t>(v)]; e != -1; e = arcs_[static_cast<size_t>(e)].next) {
            const Arc& a = arcs_[static_cast<size_t>(e)];
            if (a.cap > 0 && level_[static_cast<size_t>(a.to)] < 0) {
                level_[static_cast<size_t>(a.to)] = level_[static_cast<size_t>(v)] + 1;
                q.push(a.to);
            }
        }
    }
    return level_[static_cast<size_t>(t)] >= 0;
}

int64_t MaxFlow::dfs(int v, int t, int64_t limit) {
    if (v == t) return limit;
    int64_t pushed = 0;
    for (int& e = iter_[static_cast<size_t>(v)]; e != -1; e = arcs_[static_cast<size_t>(e)].next) {
        Arc& a = arcs_[static_cast<size_t>(e)];
        if (a.cap <= 0 || level_[static_cast<size_t>(a.to)] != level_[static_cast<size_t>(v)] + 1)
            continue;
        int64_t got = dfs(a.to, t, std::min(limit - pushed, a.cap));
        if (got > 0) {
            a.cap -= got;
            arcs_[static_cast<size_t>(e ^ 1)].cap += got;
            pushed += got;
            if (pushed == limit) return pushed;
        }
    }
    level_[static_cast<size_t>(v)] = -1;
    return pushed;
}

int64_t MaxFlow::run(int s, int t) {
    int64_t flow = 0;
    while (bfs(s, t)) {
        iter_ = head_;
        flow += dfs(s, t, INT64_MAX);
    }
    return flow;
}

std::vector<char> MaxFlow::min_cut_side(int s) const {
    std::vector<char> side(head_.size(), 0);
    std::vector<int> stack = {s};
    side[static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e = head_[static_cast<size_t>(v)]; e != -1; e = arcs_[static_cast<size_t>(e)].next) {
            const Arc& a = arcs_[static_cast<size_t>(e)];
            if (a.cap > 0 && !side[static_cast<size_t>(a.to)]) {
                side[static_cast<size_t>(a.to)] = 1;
                stack.push_back(a.to);
            }
        }
    }
    return side;
}

} // namespace tempo
