#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ghp {

/// Dinic max-flow over real capacities. Residual capacities at or below
/// `residual_eps` are treated as saturated.
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes, double residual_eps = 0.0);

    void add_edge(std::size_t from, std::size_t to, double capacity);
    double max_flow(std::size_t source, std::size_t sink);

    /// Nodes reachable from `source` in the residual graph of the last max_flow call.
    std::vector<bool> source_side(std::size_t source) const;

    std::size_t size() const { return adj_.size(); }

private:
    struct Edge {
        std::uint32_t to;
        std::uint32_t rev;
        double cap;
    };

    bool build_levels(std::size_t s, std::size_t t);
    double push(std::size_t u, std::size_t t, double limit);

    std::vector<std::vector<Edge>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
    double eps_;
};

}  // namespace ghp
