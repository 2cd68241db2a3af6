#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltopo/graph.hpp"

namespace ltopo {

/// Per-vertex predicted ancestor-edge counts, and optionally descendant-edge
/// counts (empty `delta` means absent).
struct PredictionSet {
    std::vector<std::int64_t> alpha;
    std::vector<std::int64_t> delta;
    std::string provenance;

    std::size_t size() const { return alpha.size(); }
    bool has_delta() const { return !delta.empty(); }

    static PredictionSet zeros(std::size_t n);
    /// Exact counts of `g`, which must be acyclic.
    static PredictionSet exact(const Digraph& g);
};

/// Ancestor/descendant edge counts of the graph formed by `training` (duplicates
/// and self-loops skipped). Throws NotAcyclicError if that graph has a cycle.
PredictionSet train_predictions(std::span<const EdgeEvent> training, std::size_t n);

/// Adds independent Normal(0, c * s) noise to every alpha prediction, where s is
/// the population standard deviation of (alpha_pred - alpha) against
/// `g_final`. Results are rounded and clamped at zero. Same seed, same output.
PredictionSet add_noise(const PredictionSet& preds, double c, std::uint64_t seed,
                        const Digraph& g_final);
/// Same, with the final alpha counts already computed.
PredictionSet add_noise(const PredictionSet& preds, double c, std::uint64_t seed,
                        std::span<const std::uint64_t> alpha);

/// Population standard deviation of the per-vertex alpha prediction error.
double prediction_error_sd(const PredictionSet& preds, std::span<const std::uint64_t> alpha);

/// Max per-vertex error (alpha, plus delta when present), floored at 1.
std::uint64_t true_eta(const PredictionSet& preds, const Digraph& g_final);

/// Every forward pair (u, v), u < v, kept independently with probability p,
/// then shuffled. Timestamps are the positions in the shuffled sequence.
std::vector<EdgeEvent> synthetic_dag_stream(std::size_t n, double p, std::uint64_t seed);

}  // namespace ltopo
