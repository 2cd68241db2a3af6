#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ltopo/graph.hpp"
#include "ltopo/ldfs.hpp"

namespace ltopo {

/// Incremental ordering used inside one subproblem. Vertices are local indices
/// in [0, member count).
class InnerSolver {
public:
    virtual ~InnerSolver() = default;

    /// Ok or CycleDetected; the caller never repeats an edge.
    virtual InsertOutcome insert(std::size_t u, std::size_t v) = 0;

    /// Internal labels: nonnegative, below the member count, and weakly
    /// increasing along every inserted edge.
    virtual std::vector<std::int64_t> internal_labels() const = 0;

    virtual const CostCounters& costs() const = 0;
    virtual std::unique_ptr<InnerSolver> clone() const = 0;
};

/// Builds an inner solver for `local_predictions.size()` members that will see
/// at most `capacity` edges.
using InnerSolverFactory = std::function<std::unique_ptr<InnerSolver>(
    std::span<const std::int64_t> local_predictions, std::size_t capacity)>;

/// Default inner solver: an LdfsOrder over the subproblem's members. Internal
/// labels are the dense ranks of its labels.
std::unique_ptr<InnerSolver> make_ldfs_inner_solver(std::span<const std::int64_t> local_predictions,
                                                    std::size_t capacity);

/// (ancestor level, descendant level). Descendant levels may be -1.
struct LevelPair {
    std::int64_t ancestor = 0;
    std::int64_t descendant = 0;

    auto operator<=>(const LevelPair&) const = default;
};

enum class Regime { Sparse, Dense };

struct Subproblem {
    LevelPair key;
    std::vector<VertexId> members;
    std::vector<Edge> edges;  // global ids, insertion order
    std::vector<std::pair<std::size_t, std::size_t>> local_edges;  // same edges, member slots
    std::unique_ptr<InnerSolver> inner;
    Regime regime = Regime::Sparse;

    Subproblem() = default;
    Subproblem(const Subproblem& other);
    Subproblem& operator=(const Subproblem& other);
    Subproblem(Subproblem&&) noexcept = default;
    Subproblem& operator=(Subproblem&&) noexcept = default;
};

struct IdealStats {
    std::uint64_t eta_hat = 1;
    std::uint64_t doublings = 0;
    std::uint64_t rebuilds = 0;  // sparse-to-dense inner rebuilds
    bool fallback_engaged = false;
    std::size_t subproblem_count = 0;
    std::size_t max_subproblem_edges = 0;
    std::uint64_t sparse_inserts = 0;
    std::uint64_t dense_inserts = 0;
};

struct IdealOptions {
    /// Starting error estimate; must be a power of two.
    std::uint64_t initial_eta_hat = 1;
    /// Defaults to make_ldfs_inner_solver.
    InnerSolverFactory inner_factory;
};

/// Ideal learned ordering.
///
/// Each vertex has an ancestor level in {ceil(a/e), ceil(a/e)+1} and a
/// descendant level in {floor(d/e)-1, floor(d/e)} where a, d are its
/// predictions and e is the error estimate. Along every edge the ancestor
/// level is nondecreasing and the descendant level nonincreasing. A vertex is a
/// member of the (up to four) subproblems keyed by its possible level pairs;
/// each edge is inserted into every subproblem holding both endpoints. When a
/// propagated level leaves its possible set the estimate doubles and the whole
/// edge log is replayed. Once the estimate exceeds n and t * e^(1/3) > n^2 the
/// structure falls back to a single prediction-free ordering.
class IdealOrder {
public:
    IdealOrder(std::size_t n, std::span<const std::int64_t> alpha_predictions,
               std::span<const std::int64_t> delta_predictions, std::size_t capacity,
               IdealOptions options = {});

    InsertOutcome insert(VertexId u, VertexId v);

    /// k * (ancestor level + M - descendant level) + internal label. In
    /// fallback mode, the fallback ordering's labels.
    std::vector<std::int64_t> labels() const;
    std::int64_t label(VertexId v) const;

    /// Stride k separating level pairs; exceeds every internal label.
    std::int64_t label_stride() const { return static_cast<std::int64_t>(vertex_count()) + 1; }

    LevelPair level(VertexId v) const { return {ancestor_level_[v], descendant_level_[v]}; }
    std::span<const std::int64_t> ancestor_levels() const { return ancestor_level_; }
    std::span<const std::int64_t> descendant_levels() const { return descendant_level_; }

    /// The (up to four) level pairs v may occupy under the current estimate.
    std::vector<LevelPair> possible_levels(VertexId v) const;

    std::uint64_t eta_hat() const { return eta_hat_; }
    IdealStats stats() const;
    const std::map<LevelPair, Subproblem>& subproblems() const { return subproblems_; }

    std::span<const std::int64_t> alpha_predictions() const { return alpha_pred_; }
    std::span<const std::int64_t> delta_predictions() const { return delta_pred_; }

    std::size_t vertex_count() const { return alpha_pred_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Digraph& graph() const { return graph_; }
    std::span<const Edge> event_log() const { return log_; }
    CostCounters costs() const;
    bool terminated() const { return terminated_; }
    bool fallback_engaged() const { return fallback_.has_value(); }

private:
    enum class Step { Ok, Cycle, Escaped };

    std::int64_t ancestor_base(VertexId v) const;
    std::int64_t descendant_base(VertexId v) const;

    void build();
    Step apply(VertexId u, VertexId v);
    bool propagate(VertexId u, VertexId v);
    Step route(VertexId u, VertexId v);
    Step replay();
    void retire_subproblems();
    void maybe_engage_fallback();
    std::vector<std::int64_t> subproblem_ranks(const Subproblem& h) const;

    std::size_t capacity_;
    std::vector<std::int64_t> alpha_pred_;
    std::vector<std::int64_t> delta_pred_;
    InnerSolverFactory factory_;

    std::uint64_t eta_hat_;
    std::uint64_t doublings_ = 0;
    std::uint64_t doubling_cap_;
    std::uint64_t rebuilds_ = 0;
    std::uint64_t sparse_inserts_ = 0;
    std::uint64_t dense_inserts_ = 0;

    Digraph graph_;
    std::vector<Edge> log_;
    std::vector<std::int64_t> ancestor_level_;
    std::vector<std::int64_t> descendant_level_;

    // Membership of each vertex: its slot index inside each of its subproblems,
    // keyed by level pair (at most four entries).
    std::vector<std::vector<std::pair<LevelPair, std::size_t>>> membership_;
    std::map<LevelPair, Subproblem> subproblems_;

    std::optional<LdfsOrder> fallback_;
    CostCounters own_costs_;
    CostCounters retired_costs_;
    bool terminated_ = false;

    std::vector<VertexId> stack_;
};

}  // namespace ltopo
