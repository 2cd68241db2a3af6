#pragma once

// Brute-force reference computations. Nothing here touches the incremental
// structures; tests and the harness use these as ground truth.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ltopo/graph.hpp"

namespace ltopo {

class NotAcyclicError : public std::invalid_argument {
public:
    NotAcyclicError() : std::invalid_argument("graph not acyclic") {}
};

enum class Strictness { Strict, Weak };

/// Kahn's algorithm. Empty optional if the graph has a cycle.
std::optional<std::vector<VertexId>> topological_sort(const Digraph& g);

bool is_acyclic(const Digraph& g);

/// alpha(v): number of edges (a, b) such that b reaches v (b == v included).
/// Throws NotAcyclicError on a cyclic graph.
std::vector<std::uint64_t> ancestor_edge_counts(const Digraph& g);

/// delta(v): number of edges (a, b) such that v reaches a (a == v included).
std::vector<std::uint64_t> descendant_edge_counts(const Digraph& g);

/// Per-vertex maximum of `values` over all ancestors (including the vertex).
std::vector<std::int64_t> max_over_ancestors(const Digraph& g,
                                             std::span<const std::int64_t> values);

/// Vertices that reach `v` (including `v`), as a membership mask.
std::vector<char> ancestor_mask(const Digraph& g, VertexId v);

/// Maximum per-vertex prediction error, floored at 1. `delta_pred` may be
/// empty, in which case only the ancestor term contributes.
std::uint64_t true_eta(std::span<const std::int64_t> alpha_pred,
                       std::span<const std::int64_t> delta_pred,
                       const Digraph& g_final);

/// Same, against precomputed exact counts.
std::uint64_t true_eta(std::span<const std::int64_t> alpha_pred,
                       std::span<const std::int64_t> delta_pred,
                       std::span<const std::uint64_t> alpha,
                       std::span<const std::uint64_t> delta);

bool verify_topological(std::span<const std::int64_t> labels, const Digraph& g,
                        Strictness strictness = Strictness::Strict);

/// True iff adding (u, v) to g closes a cycle. Does not mutate g.
bool from_scratch_cycle_check(const Digraph& g, VertexId u, VertexId v);

}  // namespace ltopo
