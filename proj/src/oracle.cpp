#include "ltopo/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace ltopo {

namespace {

// Number of edges incident (in-edges backward, out-edges forward) to the
// vertices reachable from `start`.
// `stamp`/`epoch` avoid clearing the visited array between calls.
std::uint64_t reachable_edge_sum(const Digraph& g, VertexId start, bool forward,
                                 std::vector<std::uint32_t>& stamp, std::uint32_t epoch,
                                 std::vector<VertexId>& stack) {
    std::uint64_t sum = 0;
    stack.clear();
    stack.push_back(start);
    stamp[start] = epoch;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        // Ancestor edges of v are the in-edges of v's ancestors; descendant
        // edges are the out-edges of its descendants.
        sum += forward ? g.out_neighbors(x).size() : g.in_neighbors(x).size();
        auto next = forward ? g.out_neighbors(x) : g.in_neighbors(x);
        for (VertexId y : next) {
            if (stamp[y] != epoch) {
                stamp[y] = epoch;
                stack.push_back(y);
            }
        }
    }
    return sum;
}

std::vector<std::uint64_t> reachable_edge_counts(const Digraph& g, bool forward) {
    if (!is_acyclic(g)) {
        throw NotAcyclicError();
    }
    const std::size_t n = g.vertex_count();
    std::vector<std::uint64_t> counts(n, 0);
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < n; ++v) {
        counts[v] = reachable_edge_sum(g, v, forward, stamp, v + 1, stack);
    }
    return counts;
}

}  // namespace

std::optional<std::vector<VertexId>> topological_sort(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> indegree(n);
    std::vector<VertexId> order;
    order.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
        indegree[v] = g.in_neighbors(v).size();
        if (indegree[v] == 0) {
            order.push_back(v);
        }
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (VertexId w : g.out_neighbors(order[head])) {
            if (--indegree[w] == 0) {
                order.push_back(w);
            }
        }
    }
    if (order.size() != n) {
        return std::nullopt;
    }
    return order;
}

bool is_acyclic(const Digraph& g) { return topological_sort(g).has_value(); }

std::vector<std::uint64_t> ancestor_edge_counts(const Digraph& g) {
    return reachable_edge_counts(g, /*forward=*/false);
}

std::vector<std::uint64_t> descendant_edge_counts(const Digraph& g) {
    return reachable_edge_counts(g, /*forward=*/true);
}

std::vector<std::int64_t> max_over_ancestors(const Digraph& g,
                                             std::span<const std::int64_t> values) {
    auto order = topological_sort(g);
    if (!order) {
        throw NotAcyclicError();
    }
    std::vector<std::int64_t> best(values.begin(), values.end());
    for (VertexId x : *order) {
        for (VertexId y : g.out_neighbors(x)) {
            best[y] = std::max(best[y], best[x]);
        }
    }
    return best;
}

std::vector<char> ancestor_mask(const Digraph& g, VertexId v) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (VertexId p : g.in_neighbors(x)) {
            if (!seen[p]) {
                seen[p] = 1;
                stack.push_back(p);
            }
        }
    }
    return seen;
}

std::uint64_t true_eta(std::span<const std::int64_t> alpha_pred,
                       std::span<const std::int64_t> delta_pred,
                       std::span<const std::uint64_t> alpha,
                       std::span<const std::uint64_t> delta) {
    std::uint64_t eta = 1;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
        std::uint64_t err = static_cast<std::uint64_t>(
            std::llabs(alpha_pred[v] - static_cast<std::int64_t>(alpha[v])));
        if (!delta_pred.empty()) {
            err += static_cast<std::uint64_t>(
                std::llabs(delta_pred[v] - static_cast<std::int64_t>(delta[v])));
        }
        eta = std::max(eta, err);
    }
    return eta;
}

std::uint64_t true_eta(std::span<const std::int64_t> alpha_pred,
                       std::span<const std::int64_t> delta_pred, const Digraph& g_final) {
    if (alpha_pred.size() != g_final.vertex_count() ||
        (!delta_pred.empty() && delta_pred.size() != g_final.vertex_count())) {
        throw std::invalid_argument("prediction size does not match vertex count");
    }
    auto alpha = ancestor_edge_counts(g_final);
    std::vector<std::uint64_t> delta;
    if (!delta_pred.empty()) {
        delta = descendant_edge_counts(g_final);
    }
    return true_eta(alpha_pred, delta_pred, alpha, delta);
}

bool verify_topological(std::span<const std::int64_t> labels, const Digraph& g,
                        Strictness strictness) {
    for (const Edge& e : g.edges()) {
        const std::int64_t lu = labels[e.source];
        const std::int64_t lv = labels[e.target];
        if (strictness == Strictness::Strict ? !(lu < lv) : !(lu <= lv)) {
            return false;
        }
    }
    return true;
}

bool from_scratch_cycle_check(const Digraph& g, VertexId u, VertexId v) {
    if (u == v) {
        return true;
    }
    // (u, v) closes a cycle iff v already reaches u.
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<VertexId> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (VertexId y : g.out_neighbors(x)) {
            if (y == u) {
                return true;
            }
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return false;
}

}  // namespace ltopo
