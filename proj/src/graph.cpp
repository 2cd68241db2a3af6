#include "ltopo/graph.hpp"

namespace ltopo {

std::string_view to_string(InsertOutcome outcome) {
    switch (outcome) {
        case InsertOutcome::Ok: return "ok";
        case InsertOutcome::CycleDetected: return "cycle";
        case InsertOutcome::Duplicate: return "duplicate";
    }
    return "unknown";
}

Digraph::Digraph(std::size_t n) : out_(n), in_(n) {}

bool Digraph::has_edge(VertexId u, VertexId v) const {
    return edge_set_.contains(key(u, v));
}

bool Digraph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (!edge_set_.insert(key(u, v)).second) {
        return false;
    }
    out_[u].push_back(v);
    in_[v].push_back(u);
    edges_.push_back({u, v});
    return true;
}

Digraph Digraph::reversed() const {
    Digraph r(vertex_count());
    for (const Edge& e : edges_) {
        r.add_edge(e.target, e.source);
    }
    return r;
}

}  // namespace ltopo
