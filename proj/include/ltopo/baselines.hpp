#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ltopo/graph.hpp"
#include "ltopo/ldfs.hpp"

namespace ltopo {

/// DFS I: the learned DFS ordering with every prediction set to zero.
LdfsOrder make_dfs1(std::size_t n, std::size_t capacity);

/// DFS II: one vertex per position. Inserting (u, v) with pos(v) < pos(u) runs
/// a DFS from v limited to positions below pos(u), then moves the visited set
/// R to just after u, keeping the relative order inside R and inside the rest
/// of the window.
class Dfs2Order {
public:
    /// Initial order is a uniform random permutation drawn from `seed`.
    Dfs2Order(std::size_t n, std::uint64_t seed);

    InsertOutcome insert(VertexId u, VertexId v);

    std::size_t position(VertexId v) const { return position_[v]; }
    std::span<const VertexId> order() const { return order_; }
    std::vector<std::int64_t> labels() const;

    std::size_t vertex_count() const { return order_.size(); }
    const Digraph& graph() const { return graph_; }
    const CostCounters& costs() const { return costs_; }
    bool terminated() const { return terminated_; }

private:
    Digraph graph_;
    std::vector<VertexId> order_;        // position -> vertex
    std::vector<std::size_t> position_;  // vertex -> position
    CostCounters costs_;
    bool terminated_ = false;

    std::vector<char> in_reach_;
    std::vector<VertexId> reach_;
    std::vector<VertexId> stack_;
    std::vector<VertexId> window_;
};

}  // namespace ltopo
