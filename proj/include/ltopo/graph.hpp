#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ltopo {

/// Dense vertex index in [0, n).
using VertexId = std::uint32_t;

struct Edge {
    VertexId source = 0;
    VertexId target = 0;

    auto operator<=>(const Edge&) const = default;
};

/// A timestamped directed edge as read from an input stream.
struct EdgeEvent {
    VertexId source = 0;
    VertexId target = 0;
    std::int64_t timestamp = 0;

    Edge edge() const { return {source, target}; }
    bool operator==(const EdgeEvent&) const = default;
};

enum class InsertOutcome { Ok, CycleDetected, Duplicate };

std::string_view to_string(InsertOutcome outcome);

/// Thrown when an insert is attempted on a structure that already reported a cycle.
class InsertAfterTermination : public std::logic_error {
public:
    InsertAfterTermination()
        : std::logic_error("insert after a cycle was reported") {}
};

/// Work counters. `total()` is the cost metric: vertices plus edges processed.
struct CostCounters {
    std::uint64_t vertices_processed = 0;
    std::uint64_t edges_processed = 0;
    std::uint64_t level_updates = 0;
    std::uint64_t relabels = 0;

    std::uint64_t total() const { return vertices_processed + edges_processed; }

    CostCounters& operator+=(const CostCounters& other) {
        vertices_processed += other.vertices_processed;
        edges_processed += other.edges_processed;
        level_updates += other.level_updates;
        relabels += other.relabels;
        return *this;
    }

    bool operator==(const CostCounters&) const = default;
};

/// Simple directed graph on a fixed vertex set with duplicate-edge detection.
/// Edges are kept in insertion order as well as in adjacency lists.
class Digraph {
public:
    explicit Digraph(std::size_t n = 0);

    std::size_t vertex_count() const { return out_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(VertexId u, VertexId v) const;

    /// Returns false (and leaves the graph unchanged) if the edge already exists.
    /// Throws std::out_of_range for ids >= n.
    bool add_edge(VertexId u, VertexId v);

    std::span<const VertexId> out_neighbors(VertexId u) const { return out_[u]; }
    std::span<const VertexId> in_neighbors(VertexId v) const { return in_[v]; }
    std::span<const Edge> edges() const { return edges_; }

    Digraph reversed() const;

    void check_vertex(VertexId v) const {
        if (v >= out_.size()) {
            throw std::out_of_range("vertex id out of range");
        }
    }

private:
    static std::uint64_t key(VertexId u, VertexId v) {
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> edge_set_;
};

}  // namespace ltopo
