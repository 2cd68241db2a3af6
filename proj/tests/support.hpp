#pragma once

// Stream generators and brute-force checkers shared by the unit tests and the
// acceptance binary.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ltopo/baselines.hpp"
#include "ltopo/graph.hpp"
#include "ltopo/ideal.hpp"
#include "ltopo/ldfs.hpp"
#include "ltopo/oracle.hpp"
#include "ltopo/predictor.hpp"

namespace ltopo::testkit {

/// Random DAG stream on n vertices. With salt > 0, that fraction of extra
/// backward edges (high id to low id) is spliced in at random positions, so
/// the stream usually closes a cycle somewhere.
inline std::vector<Edge> salted_stream(std::size_t n, double p, double salt, std::uint64_t seed) {
    std::vector<Edge> out;
    for (const EdgeEvent& e : synthetic_dag_stream(n, p, seed)) {
        out.push_back(e.edge());
    }
    const auto extra = static_cast<std::size_t>(salt * static_cast<double>(out.size()) + 0.5);
    if (n < 2 || extra == 0) {
        return out;
    }
    std::mt19937_64 rng(seed ^ 0x5a17ULL);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    for (std::size_t k = 0; k < extra; ++k) {
        VertexId a = pick(rng);
        VertexId b = pick(rng);
        while (a == b) {
            b = pick(rng);
        }
        if (a < b) {
            std::swap(a, b);  // backward w.r.t. the generator's order
        }
        std::uniform_int_distribution<std::size_t> at(0, out.size());
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(at(rng)), Edge{a, b});
    }
    return out;
}

inline std::vector<Edge> dag_stream(std::size_t n, double p, std::uint64_t seed) {
    return salted_stream(n, p, 0.0, seed);
}

/// Prefix of `stream` that a correct structure accepts: everything up to (not
/// including) the first cycle-closing edge, duplicates dropped.
inline std::vector<Edge> acyclic_prefix(std::size_t n, const std::vector<Edge>& stream) {
    Digraph g(n);
    std::vector<Edge> out;
    for (const Edge& e : stream) {
        if (g.has_edge(e.source, e.target)) {
            continue;
        }
        if (from_scratch_cycle_check(g, e.source, e.target)) {
            break;
        }
        g.add_edge(e.source, e.target);
        out.push_back(e);
    }
    return out;
}

inline Digraph graph_of(std::size_t n, const std::vector<Edge>& edges) {
    Digraph g(n);
    for (const Edge& e : edges) {
        g.add_edge(e.source, e.target);
    }
    return g;
}

inline std::vector<std::int64_t> signed_counts(const std::vector<std::uint64_t>& c) {
    return {c.begin(), c.end()};
}

/// Integer perturbation of exact counts: each value moves by a uniform amount
/// in [-spread, spread], clamped at zero.
inline std::vector<std::int64_t> perturbed(const std::vector<std::uint64_t>& exact, std::int64_t spread,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> d(-spread, spread);
    std::vector<std::int64_t> out;
    for (std::uint64_t x : exact) {
        out.push_back(std::max<std::int64_t>(0, static_cast<std::int64_t>(x) + d(rng)));
    }
    return out;
}

/// Number of edges (a, b) of g with b an ancestor of v and both a, b on v's level.
inline std::uint64_t same_level_ancestor_edges(const Digraph& g, std::span<const std::int64_t> level,
                                               VertexId v) {
    const auto mask = ancestor_mask(g, v);
    std::uint64_t k = 0;
    for (const Edge& e : g.edges()) {
        if (mask[e.target] && level[e.source] == level[v] && level[e.target] == level[v]) {
            ++k;
        }
    }
    return k;
}

/// Subgraph of g induced by `members`, relabelled to member slots.
inline Digraph induced(const Digraph& g, const std::vector<VertexId>& members) {
    std::vector<std::int64_t> slot(g.vertex_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        slot[members[i]] = static_cast<std::int64_t>(i);
    }
    Digraph h(members.size());
    for (const Edge& e : g.edges()) {
        if (slot[e.source] >= 0 && slot[e.target] >= 0) {
            h.add_edge(static_cast<VertexId>(slot[e.source]), static_cast<VertexId>(slot[e.target]));
        }
    }
    return h;
}

}  // namespace ltopo::testkit
