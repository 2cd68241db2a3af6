#include "ltopo/ldfs.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ltopo/oracle.hpp"

namespace ltopo {

LdfsOrder::LdfsOrder(std::size_t n, std::span<const std::int64_t> predictions,
                     std::size_t capacity)
    : capacity_(capacity), graph_(n) {
    if (n == 0) {
        throw std::invalid_argument("LdfsOrder needs at least one vertex");
    }
    if (capacity == 0) {
        throw std::invalid_argument("LdfsOrder needs a positive edge capacity");
    }
    if (predictions.size() != n) {
        throw std::invalid_argument("prediction count does not match vertex count");
    }
    const std::uint64_t nm = static_cast<std::uint64_t>(n) * capacity;
    sentinel_ = nm + 1;
    stride_ = static_cast<std::int64_t>(nm + 2);
    // Every assigned j is at most n*M, strictly below the sentinel.
    counter_ = nm;

    level_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (predictions[v] < 0) {
            throw std::invalid_argument("predictions must be nonnegative");
        }
        level_[v] = std::min<std::int64_t>(predictions[v], static_cast<std::int64_t>(capacity));
    }
    initial_level_ = level_;
    same_level_in_.resize(n);
    tie_break_.assign(n, sentinel_);
    mark_.assign(n, 0);
}

std::vector<std::int64_t> LdfsOrder::labels() const {
    std::vector<std::int64_t> out(vertex_count());
    for (VertexId v = 0; v < out.size(); ++v) {
        out[v] = label(v);
    }
    return out;
}

std::int64_t LdfsOrder::max_level_rise() const {
    std::int64_t rise = 0;
    for (std::size_t v = 0; v < level_.size(); ++v) {
        rise = std::max(rise, level_[v] - initial_level_[v]);
    }
    return rise;
}

InsertOutcome LdfsOrder::insert(VertexId u, VertexId v) {
    if (terminated_) {
        throw InsertAfterTermination();
    }
    graph_.check_vertex(u);
    graph_.check_vertex(v);
    if (graph_.has_edge(u, v)) {
        return InsertOutcome::Duplicate;
    }
    if (u == v) {
        terminated_ = true;
        return InsertOutcome::CycleDetected;
    }
    graph_.add_edge(u, v);

    forward_post_.clear();
    backward_post_.clear();
    if (level_[u] > level_[v]) {
        raise_levels_from(u, v);
    } else if (level_[u] == level_[v]) {
        same_level_in_[v].push_back(u);
    } else {
        return InsertOutcome::Ok;
    }

    // Here level(u) == level(v): any cycle through the new edge lives on this level.
    if (reverse_search(u, v)) {
        terminated_ = true;
        return InsertOutcome::CycleDetected;
    }
    if (!forward_post_.empty() || tie_break_[u] >= tie_break_[v]) {
        relabel();
    }
    return InsertOutcome::Ok;
}

void LdfsOrder::raise_levels_from(VertexId u, VertexId v) {
    const std::int64_t target = level_[u];
    const std::uint32_t raised = ++epoch_;

    auto raise = [&](VertexId w) {
        level_[w] = target;
        mark_[w] = raised;
        ++costs_.level_updates;
        ++costs_.vertices_processed;
        stack_.emplace_back(w, 0);
    };

    stack_.clear();
    raise(v);
    while (!stack_.empty()) {
        const VertexId x = stack_.back().first;
        const std::size_t i = stack_.back().second;
        auto children = graph_.out_neighbors(x);
        if (i == children.size()) {
            forward_post_.push_back(x);
            stack_.pop_back();
            continue;
        }
        ++stack_.back().second;
        const VertexId w = children[i];
        ++costs_.edges_processed;
        if (level_[w] < target) {
            raise(w);
        } else if (level_[w] == target && mark_[w] != raised) {
            // x just joined w's level; raised vertices get their lists rebuilt below.
            same_level_in_[w].push_back(x);
        }
    }

    for (VertexId w : forward_post_) {
        auto& list = same_level_in_[w];
        list.clear();
        for (VertexId p : graph_.in_neighbors(w)) {
            ++costs_.edges_processed;
            if (level_[p] == target) {
                list.push_back(p);
            }
        }
    }
}

bool LdfsOrder::reverse_search(VertexId u, VertexId v) {
    const std::uint32_t seen = ++epoch_;
    stack_.clear();
    stack_.emplace_back(u, 0);
    mark_[u] = seen;
    ++costs_.vertices_processed;
    while (!stack_.empty()) {
        const VertexId x = stack_.back().first;
        const std::size_t i = stack_.back().second;
        const auto& parents = same_level_in_[x];
        if (i == parents.size()) {
            backward_post_.push_back(x);
            stack_.pop_back();
            continue;
        }
        ++stack_.back().second;
        const VertexId p = parents[i];
        ++costs_.edges_processed;
        ++reverse_search_edges_;
        if (p == v) {
            return true;
        }
        if (mark_[p] != seen) {
            mark_[p] = seen;
            ++costs_.vertices_processed;
            stack_.emplace_back(p, 0);
        }
    }
    return false;
}

void LdfsOrder::relabel() {
    // T = (reverse-search finish order) followed by (reverse postorder of the
    // forward search). Walk T backwards handing out decreasing counter values.
    const std::size_t total = backward_post_.size() + forward_post_.size();
    if (counter_ <= total) {
        recompute_all_tie_breaks();
        return;
    }
    for (VertexId w : forward_post_) {
        tie_break_[w] = counter_--;
    }
    for (auto it = backward_post_.rbegin(); it != backward_post_.rend(); ++it) {
        tie_break_[*it] = counter_--;
    }
    costs_.relabels += total;
}

void LdfsOrder::recompute_all_tie_breaks() {
    ++counter_resets_;
    auto order = topological_sort(graph_);
    if (!order) {
        throw std::logic_error("LdfsOrder: graph became cyclic without a report");
    }
    counter_ = sentinel_ - 1;
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        tie_break_[*it] = counter_--;
    }
    costs_.relabels += order->size();
}

}  // namespace ltopo
