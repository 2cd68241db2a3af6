#include "ltopo/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ltopo {

LdfsOrder make_dfs1(std::size_t n, std::size_t capacity) {
    std::vector<std::int64_t> zeros(n, 0);
    return LdfsOrder(n, zeros, capacity);
}

Dfs2Order::Dfs2Order(std::size_t n, std::uint64_t seed)
    : graph_(n), order_(n), position_(n), in_reach_(n, 0) {
    if (n == 0) {
        throw std::invalid_argument("Dfs2Order needs at least one vertex");
    }
    std::iota(order_.begin(), order_.end(), VertexId{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order_.begin(), order_.end(), rng);
    for (std::size_t p = 0; p < n; ++p) {
        position_[order_[p]] = p;
    }
}

std::vector<std::int64_t> Dfs2Order::labels() const {
    return {position_.begin(), position_.end()};
}

InsertOutcome Dfs2Order::insert(VertexId u, VertexId v) {
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

    const std::size_t pu = position_[u];
    const std::size_t pv = position_[v];
    if (pv > pu) {
        return InsertOutcome::Ok;
    }

    // Partial DFS from v over vertices positioned before u. Every path v ~> u
    // stays inside that window, so reaching u is exactly the cycle test.
    reach_.clear();
    stack_.clear();
    stack_.push_back(v);
    in_reach_[v] = 1;
    reach_.push_back(v);
    ++costs_.vertices_processed;
    bool cycle = false;
    while (!stack_.empty() && !cycle) {
        const VertexId x = stack_.back();
        stack_.pop_back();
        for (VertexId w : graph_.out_neighbors(x)) {
            ++costs_.edges_processed;
            if (w == u) {
                cycle = true;
                break;
            }
            if (position_[w] < pu && !in_reach_[w]) {
                in_reach_[w] = 1;
                reach_.push_back(w);
                ++costs_.vertices_processed;
                stack_.push_back(w);
            }
        }
    }
    if (cycle) {
        for (VertexId w : reach_) {
            in_reach_[w] = 0;
        }
        terminated_ = true;
        return InsertOutcome::CycleDetected;
    }

    // Rewrite the window [pv, pu]: the untouched vertices (ending with u) slide
    // left, then R follows in its previous relative order.
    window_.clear();
    for (std::size_t p = pv; p <= pu; ++p) {
        if (!in_reach_[order_[p]]) {
            window_.push_back(order_[p]);
        }
    }
    for (std::size_t p = pv; p <= pu; ++p) {
        if (in_reach_[order_[p]]) {
            window_.push_back(order_[p]);
        }
    }
    for (std::size_t k = 0; k < window_.size(); ++k) {
        order_[pv + k] = window_[k];
        position_[window_[k]] = pv + k;
    }
    costs_.vertices_processed += window_.size();
    for (VertexId w : reach_) {
        in_reach_[w] = 0;
    }
    return InsertOutcome::Ok;
}

}  // namespace ltopo
