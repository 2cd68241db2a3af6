#include "ltopo/ideal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ltopo/baselines.hpp"

namespace ltopo {

namespace {

class LdfsInnerSolver final : public InnerSolver {
public:
    LdfsInnerSolver(std::span<const std::int64_t> predictions, std::size_t capacity)
        : order_(predictions.size(), predictions, capacity) {}

    InsertOutcome insert(std::size_t u, std::size_t v) override {
        return order_.insert(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }

    std::vector<std::int64_t> internal_labels() const override {
        // Dense ranks: equal labels share a rank, so every rank is < member count.
        auto raw = order_.labels();
        std::vector<std::int64_t> sorted = raw;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto& x : raw) {
            x = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        }
        return raw;
    }

    const CostCounters& costs() const override { return order_.costs(); }

    std::unique_ptr<InnerSolver> clone() const override {
        return std::make_unique<LdfsInnerSolver>(*this);
    }

private:
    LdfsOrder order_;
};

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::unique_ptr<InnerSolver> make_ldfs_inner_solver(std::span<const std::int64_t> local_predictions,
                                                    std::size_t capacity) {
    return std::make_unique<LdfsInnerSolver>(local_predictions, capacity);
}

Subproblem::Subproblem(const Subproblem& other)
    : key(other.key),
      members(other.members),
      edges(other.edges),
      local_edges(other.local_edges),
      inner(other.inner ? other.inner->clone() : nullptr),
      regime(other.regime) {}

Subproblem& Subproblem::operator=(const Subproblem& other) {
    if (this != &other) {
        Subproblem copy(other);
        *this = std::move(copy);
    }
    return *this;
}

IdealOrder::IdealOrder(std::size_t n, std::span<const std::int64_t> alpha_predictions,
                       std::span<const std::int64_t> delta_predictions, std::size_t capacity,
                       IdealOptions options)
    : capacity_(capacity),
      factory_(options.inner_factory ? std::move(options.inner_factory)
                                     : InnerSolverFactory(make_ldfs_inner_solver)),
      eta_hat_(options.initial_eta_hat),
      graph_(n) {
    if (n == 0) {
        throw std::invalid_argument("IdealOrder needs at least one vertex");
    }
    if (capacity == 0) {
        throw std::invalid_argument("IdealOrder needs a positive edge capacity");
    }
    if (alpha_predictions.size() != n || delta_predictions.size() != n) {
        throw std::invalid_argument("prediction count does not match vertex count");
    }
    if (eta_hat_ == 0 || !std::has_single_bit(eta_hat_)) {
        throw std::invalid_argument("initial eta_hat must be a power of two");
    }
    const auto cap = static_cast<std::int64_t>(capacity);
    alpha_pred_.resize(n);
    delta_pred_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (alpha_predictions[v] < 0 || delta_predictions[v] < 0) {
            throw std::invalid_argument("predictions must be nonnegative");
        }
        alpha_pred_[v] = std::min(alpha_predictions[v], cap);
        delta_pred_[v] = std::min(delta_predictions[v], cap);
    }
    // Once eta_hat >= M no propagated level can leave its possible set.
    doubling_cap_ = std::bit_width(static_cast<std::uint64_t>(capacity)) + 2;
    build();
}

std::int64_t IdealOrder::ancestor_base(VertexId v) const {
    return ceil_div(alpha_pred_[v], static_cast<std::int64_t>(eta_hat_));
}

std::int64_t IdealOrder::descendant_base(VertexId v) const {
    return delta_pred_[v] / static_cast<std::int64_t>(eta_hat_);
}

std::vector<LevelPair> IdealOrder::possible_levels(VertexId v) const {
    const std::int64_t a = ancestor_base(v);
    const std::int64_t d = descendant_base(v);
    return {{a, d - 1}, {a, d}, {a + 1, d - 1}, {a + 1, d}};
}

void IdealOrder::retire_subproblems() {
    for (const auto& [key, h] : subproblems_) {
        if (h.inner) {
            retired_costs_ += h.inner->costs();
        }
    }
    subproblems_.clear();
}

void IdealOrder::build() {
    const std::size_t n = vertex_count();
    retire_subproblems();
    graph_ = Digraph(n);
    ancestor_level_.resize(n);
    descendant_level_.resize(n);
    membership_.assign(n, {});
    for (VertexId v = 0; v < n; ++v) {
        ancestor_level_[v] = ancestor_base(v);
        descendant_level_[v] = descendant_base(v);
        for (const LevelPair& key : possible_levels(v)) {
            Subproblem& h = subproblems_[key];
            h.key = key;
            membership_[v].emplace_back(key, h.members.size());
            h.members.push_back(v);
        }
    }
}

bool IdealOrder::propagate(VertexId u, VertexId v) {
    if (ancestor_level_[u] > ancestor_level_[v]) {
        const std::int64_t target = ancestor_level_[u];
        auto lift = [&](VertexId w) {
            ancestor_level_[w] = target;
            ++own_costs_.level_updates;
            ++own_costs_.vertices_processed;
            stack_.push_back(w);
            return target > ancestor_base(w) + 1;
        };
        stack_.clear();
        if (lift(v)) {
            return true;
        }
        while (!stack_.empty()) {
            const VertexId x = stack_.back();
            stack_.pop_back();
            for (VertexId w : graph_.out_neighbors(x)) {
                ++own_costs_.edges_processed;
                if (ancestor_level_[w] < target && lift(w)) {
                    return true;
                }
            }
        }
    }
    if (descendant_level_[u] < descendant_level_[v]) {
        const std::int64_t target = descendant_level_[u];
        auto lower = [&](VertexId w) {
            descendant_level_[w] = target;
            ++own_costs_.level_updates;
            ++own_costs_.vertices_processed;
            stack_.push_back(w);
            return target < descendant_base(w) - 1;
        };
        stack_.clear();
        if (lower(v)) {
            return true;
        }
        while (!stack_.empty()) {
            const VertexId x = stack_.back();
            stack_.pop_back();
            for (VertexId w : graph_.out_neighbors(x)) {
                ++own_costs_.edges_processed;
                if (descendant_level_[w] > target && lower(w)) {
                    return true;
                }
            }
        }
    }
    return false;
}

IdealOrder::Step IdealOrder::route(VertexId u, VertexId v) {
    const double growth = std::cbrt(static_cast<double>(eta_hat_) * static_cast<double>(eta_hat_));
    for (const auto& [key, lu] : membership_[u]) {
        auto it = std::find_if(membership_[v].begin(), membership_[v].end(),
                               [&](const auto& entry) { return entry.first == key; });
        if (it == membership_[v].end()) {
            continue;
        }
        const std::size_t lv = it->second;
        Subproblem& h = subproblems_.at(key);

        const double threshold = static_cast<double>(h.members.size()) * growth;
        const auto m_before = static_cast<double>(h.edges.size());
        auto fresh_inner = [&] {
            std::vector<std::int64_t> local(h.members.size());
            // Members share the ancestor index j, so subtracting (j - 2) * eta_hat
            // keeps their relative order and maps them into (0, 2 * eta_hat].
            const std::int64_t shift = (key.ancestor - 2) * static_cast<std::int64_t>(eta_hat_);
            for (std::size_t i = 0; i < local.size(); ++i) {
                local[i] = std::max<std::int64_t>(0, alpha_pred_[h.members[i]] - shift);
            }
            return factory_(local, capacity_);
        };

        if (m_before + 1 < threshold) {
            h.regime = Regime::Sparse;
            ++sparse_inserts_;
        } else if (m_before < threshold) {
            // Crossing into the dense regime: rebuild from the subproblem's edges.
            if (h.inner) {
                retired_costs_ += h.inner->costs();
            }
            h.inner = fresh_inner();
            for (const auto& [a, b] : h.local_edges) {
                h.inner->insert(a, b);
            }
            h.regime = Regime::Dense;
            ++rebuilds_;
            ++dense_inserts_;
        } else {
            h.regime = Regime::Dense;
            ++dense_inserts_;
        }
        if (!h.inner) {
            h.inner = fresh_inner();
        }
        h.edges.push_back({u, v});
        h.local_edges.emplace_back(lu, lv);
        if (h.inner->insert(lu, lv) == InsertOutcome::CycleDetected) {
            return Step::Cycle;
        }
    }
    return Step::Ok;
}

IdealOrder::Step IdealOrder::apply(VertexId u, VertexId v) {
    graph_.add_edge(u, v);
    if (propagate(u, v)) {
        return Step::Escaped;
    }
    return route(u, v);
}

IdealOrder::Step IdealOrder::replay() {
    build();
    Step step = Step::Ok;
    for (const Edge& e : log_) {
        step = apply(e.source, e.target);
        if (step != Step::Ok) {
            break;
        }
    }
    return step;
}

InsertOutcome IdealOrder::insert(VertexId u, VertexId v) {
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
    log_.push_back({u, v});

    if (fallback_) {
        graph_.add_edge(u, v);
        const InsertOutcome outcome = fallback_->insert(u, v);
        if (outcome == InsertOutcome::CycleDetected) {
            terminated_ = true;
        }
        return outcome;
    }

    Step step = apply(u, v);
    while (step == Step::Escaped) {
        if (doublings_ >= doubling_cap_) {
            throw std::logic_error("IdealOrder: error estimate doubled past its bound");
        }
        eta_hat_ *= 2;
        ++doublings_;
        step = replay();
    }
    if (step == Step::Cycle) {
        terminated_ = true;
        return InsertOutcome::CycleDetected;
    }
    maybe_engage_fallback();
    return InsertOutcome::Ok;
}

void IdealOrder::maybe_engage_fallback() {
    const auto n = static_cast<double>(vertex_count());
    const auto t = static_cast<double>(log_.size());
    const auto eta = static_cast<double>(eta_hat_);
    if (!(eta > n && t * std::cbrt(eta) > n * n)) {
        return;
    }
    retire_subproblems();
    membership_.assign(vertex_count(), {});
    fallback_.emplace(make_dfs1(vertex_count(), std::max(capacity_, log_.size())));
    for (const Edge& e : log_) {
        fallback_->insert(e.source, e.target);
    }
}

std::vector<std::int64_t> IdealOrder::subproblem_ranks(const Subproblem& h) const {
    if (!h.inner) {
        return std::vector<std::int64_t>(h.members.size(), 0);
    }
    return h.inner->internal_labels();
}

std::vector<std::int64_t> IdealOrder::labels() const {
    if (fallback_) {
        return fallback_->labels();
    }
    const std::size_t n = vertex_count();
    const std::int64_t k = label_stride();
    const auto m = static_cast<std::int64_t>(capacity_);
    std::map<LevelPair, std::vector<std::int64_t>> ranks;
    std::vector<std::int64_t> out(n);
    for (VertexId v = 0; v < n; ++v) {
        const LevelPair key = level(v);
        auto it = ranks.find(key);
        if (it == ranks.end()) {
            it = ranks.emplace(key, subproblem_ranks(subproblems_.at(key))).first;
        }
        const auto slot = std::find_if(membership_[v].begin(), membership_[v].end(),
                                       [&](const auto& entry) { return entry.first == key; });
        out[v] = k * (key.ancestor + m - key.descendant) + it->second[slot->second];
    }
    return out;
}

std::int64_t IdealOrder::label(VertexId v) const {
    graph_.check_vertex(v);
    if (fallback_) {
        return fallback_->label(v);
    }
    const LevelPair key = level(v);
    const auto slot = std::find_if(membership_[v].begin(), membership_[v].end(),
                                   [&](const auto& entry) { return entry.first == key; });
    const auto ranks = subproblem_ranks(subproblems_.at(key));
    return label_stride() * (key.ancestor + static_cast<std::int64_t>(capacity_) - key.descendant) +
           ranks[slot->second];
}

IdealStats IdealOrder::stats() const {
    IdealStats s;
    s.eta_hat = eta_hat_;
    s.doublings = doublings_;
    s.rebuilds = rebuilds_;
    s.fallback_engaged = fallback_.has_value();
    s.subproblem_count = subproblems_.size();
    for (const auto& [key, h] : subproblems_) {
        s.max_subproblem_edges = std::max(s.max_subproblem_edges, h.edges.size());
    }
    s.sparse_inserts = sparse_inserts_;
    s.dense_inserts = dense_inserts_;
    return s;
}

CostCounters IdealOrder::costs() const {
    CostCounters total = own_costs_;
    total += retired_costs_;
    for (const auto& [key, h] : subproblems_) {
        if (h.inner) {
            total += h.inner->costs();
        }
    }
    if (fallback_) {
        total += fallback_->costs();
    }
    return total;
}

}  // namespace ltopo
