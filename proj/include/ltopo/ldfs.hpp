#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ltopo/graph.hpp"

namespace ltopo {

/// Learned DFS ordering.
///
/// Each vertex carries a level, initialised from its predicted ancestor-edge
/// count, and a tie-break index j. For every edge (x, y) the structure keeps
/// level(x) <= level(y), and label(v) = level(v) * (n*M + 2) + j(v) is a strict
/// topological labelling. Levels only move upward by forward propagation; cycle
/// checks are a reverse search restricted to same-level parents.
///
/// With all-zero predictions this is exactly the plain greedy DFS ordering
/// (see make_dfs1).
class LdfsOrder {
public:
    /// `predictions` must have n nonnegative entries; they are clamped to
    /// `capacity`, the upper bound on the number of edges the run will insert.
    LdfsOrder(std::size_t n, std::span<const std::int64_t> predictions, std::size_t capacity);

    InsertOutcome insert(VertexId u, VertexId v);

    std::int64_t label(VertexId v) const {
        return level_[v] * stride_ + static_cast<std::int64_t>(tie_break_[v]);
    }
    std::vector<std::int64_t> labels() const;

    std::int64_t level(VertexId v) const { return level_[v]; }
    std::span<const std::int64_t> levels() const { return level_; }
    std::span<const std::int64_t> initial_levels() const { return initial_level_; }

    /// max over v of (current level - initial level).
    std::int64_t max_level_rise() const;

    std::uint64_t counter() const { return counter_; }
    std::uint64_t tie_break(VertexId v) const { return tie_break_[v]; }
    std::span<const VertexId> same_level_parents(VertexId v) const { return same_level_in_[v]; }

    std::size_t vertex_count() const { return level_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Digraph& graph() const { return graph_; }
    const CostCounters& costs() const { return costs_; }
    bool terminated() const { return terminated_; }

    /// Edges examined by the same-level reverse searches (a subset of edges_processed).
    std::uint64_t reverse_search_edges() const { return reverse_search_edges_; }
    /// Times the tie-break counter ran out and every j was recomputed. Expected 0.
    std::uint64_t counter_resets() const { return counter_resets_; }

private:
    void raise_levels_from(VertexId u, VertexId v);
    bool reverse_search(VertexId u, VertexId v);
    void relabel();
    void recompute_all_tie_breaks();

    std::size_t capacity_;
    std::uint64_t sentinel_;  // n*M + 1, the "never assigned" tie-break
    std::int64_t stride_;     // n*M + 2

    Digraph graph_;
    std::vector<std::int64_t> level_;
    std::vector<std::int64_t> initial_level_;
    std::vector<std::vector<VertexId>> same_level_in_;
    std::vector<std::uint64_t> tie_break_;
    std::uint64_t counter_;

    CostCounters costs_;
    std::uint64_t reverse_search_edges_ = 0;
    std::uint64_t counter_resets_ = 0;
    bool terminated_ = false;

    // Per-insert scratch.
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<VertexId> forward_post_;   // postorder of the forward search
    std::vector<VertexId> backward_post_;  // finish order of the reverse search
    std::vector<std::pair<VertexId, std::size_t>> stack_;
};

}  // namespace ltopo
