#include "ghp/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace ghp {

FlowNetwork::FlowNetwork(std::size_t nodes, double residual_eps)
    : adj_(nodes), level_(nodes), next_(nodes), eps_(residual_eps) {}

void FlowNetwork::add_edge(std::size_t from, std::size_t to, double capacity) {
    const auto fi = static_cast<std::uint32_t>(adj_[from].size());
    const auto ti = static_cast<std::uint32_t>(adj_[to].size()) + (from == to ? 1u : 0u);
    adj_[from].push_back({static_cast<std::uint32_t>(to), ti, capacity});
    adj_[to].push_back({static_cast<std::uint32_t>(from), fi, 0.0});
}

bool FlowNetwork::build_levels(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        for (const Edge& e : adj_[u]) {
            if (e.cap > eps_ && level_[e.to] < 0) {
                level_[e.to] = level_[u] + 1;
                q.push(e.to);
            }
        }
    }
    return level_[t] >= 0;
}

double FlowNetwork::push(std::size_t u, std::size_t t, double limit) {
    if (u == t) return limit;
    for (std::size_t& i = next_[u]; i < adj_[u].size(); ++i) {
        Edge& e = adj_[u][i];
        if (e.cap <= eps_ || level_[e.to] != level_[u] + 1) continue;
        const double got = push(e.to, t, std::min(limit, e.cap));
        if (got > 0.0) {
            e.cap -= got;
            adj_[e.to][e.rev].cap += got;
            return got;
        }
    }
    return 0.0;
}

double FlowNetwork::max_flow(std::size_t source, std::size_t sink) {
    double total = 0.0;
    while (build_levels(source, sink)) {
        std::fill(next_.begin(), next_.end(), 0);
        for (;;) {
            const double f = push(source, sink, std::numeric_limits<double>::infinity());
            if (f <= 0.0) break;
            total += f;
        }
    }
    return total;
}

std::vector<bool> FlowNetwork::source_side(std::size_t source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const Edge& e : adj_[u]) {
            if (e.cap > eps_ && !seen[e.to]) {
                seen[e.to] = true;
                stack.push_back(e.to);
            }
        }
    }
    return seen;
}

}  // namespace ghp
