#include <gtest/gtest.h>

#include <functional>

#include "ltopo/oracle.hpp"
#include "support.hpp"

using namespace ltopo;

namespace {

Digraph path3() {
    Digraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

Digraph diamond() {
    Digraph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    return g;
}

using Counts = std::vector<std::uint64_t>;

}  // namespace

TEST(AncestorEdgeCounts, EmptyGraphIsZero) {
    EXPECT_EQ(ancestor_edge_counts(Digraph(3)), (Counts{0, 0, 0}));
}

TEST(AncestorEdgeCounts, Path) {
    EXPECT_EQ(ancestor_edge_counts(path3()), (Counts{0, 1, 2}));
}

TEST(AncestorEdgeCounts, DiamondSinkSeesAllFourEdges) {
    const auto a = ancestor_edge_counts(diamond());
    EXPECT_EQ(a, (Counts{0, 1, 1, 4}));
}

TEST(AncestorEdgeCounts, CyclicGraphThrows) {
    Digraph g(2);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    EXPECT_THROW(ancestor_edge_counts(g), NotAcyclicError);
    EXPECT_THROW(descendant_edge_counts(g), NotAcyclicError);
    try {
        ancestor_edge_counts(g);
    } catch (const NotAcyclicError& e) {
        EXPECT_STREQ(e.what(), "graph not acyclic");
    }
}

TEST(DescendantEdgeCounts, EmptyGraphIsZero) {
    EXPECT_EQ(descendant_edge_counts(Digraph(3)), (Counts{0, 0, 0}));
}

TEST(DescendantEdgeCounts, Path) {
    EXPECT_EQ(descendant_edge_counts(path3()), (Counts{2, 1, 0}));
}

TEST(DescendantEdgeCounts, DiamondSourceSeesAllFourEdges) {
    EXPECT_EQ(descendant_edge_counts(diamond()), (Counts{4, 1, 1, 0}));
}

TEST(TrueEta, ExactPredictionsClampToOne) {
    const Digraph g = diamond();
    const auto alpha = testkit::signed_counts(ancestor_edge_counts(g));
    const auto delta = testkit::signed_counts(descendant_edge_counts(g));
    EXPECT_EQ(true_eta(alpha, {}, g), 1u);
    EXPECT_EQ(true_eta(alpha, delta, g), 1u);
}

TEST(TrueEta, ZeroPredictionsOnPath) {
    const std::vector<std::int64_t> zeros{0, 0, 0};
    EXPECT_EQ(true_eta(zeros, {}, path3()), 2u);
}

TEST(TrueEta, LargestSingleErrorWins) {
    const std::vector<std::int64_t> preds{5, 1, 2};
    EXPECT_EQ(true_eta(preds, {}, path3()), 5u);
}

TEST(TrueEta, DeltaTermAddsPerVertex) {
    // vertex 1: |1-1| + |0-1| = 1; vertex 0: |0-0| + |4-2| = 2.
    const std::vector<std::int64_t> a{0, 1, 2};
    const std::vector<std::int64_t> d{4, 0, 0};
    EXPECT_EQ(true_eta(a, d, path3()), 2u);
}

TEST(VerifyTopological, StrictAccepts) {
    Digraph g(2);
    g.add_edge(0, 1);
    const std::vector<std::int64_t> labels{0, 1};
    EXPECT_TRUE(verify_topological(labels, g, Strictness::Strict));
}

TEST(VerifyTopological, TiesPassOnlyWeak) {
    Digraph g(2);
    g.add_edge(0, 1);
    const std::vector<std::int64_t> labels{1, 1};
    EXPECT_FALSE(verify_topological(labels, g, Strictness::Strict));
    EXPECT_TRUE(verify_topological(labels, g, Strictness::Weak));
}

TEST(VerifyTopological, InversionFailsBoth) {
    Digraph g(2);
    g.add_edge(0, 1);
    const std::vector<std::int64_t> labels{5, 3};
    EXPECT_FALSE(verify_topological(labels, g, Strictness::Strict));
    EXPECT_FALSE(verify_topological(labels, g, Strictness::Weak));
}

TEST(FromScratchCycleCheck, TwoCycle) {
    Digraph g(2);
    g.add_edge(0, 1);
    EXPECT_TRUE(from_scratch_cycle_check(g, 1, 0));
}

TEST(FromScratchCycleCheck, DuplicateIsNotACycle) {
    Digraph g(2);
    g.add_edge(0, 1);
    EXPECT_FALSE(from_scratch_cycle_check(g, 0, 1));
}

TEST(FromScratchCycleCheck, ThreeCycleAndSelfLoop) {
    const Digraph g = path3();
    EXPECT_TRUE(from_scratch_cycle_check(g, 2, 0));
    EXPECT_TRUE(from_scratch_cycle_check(g, 1, 1));
    EXPECT_FALSE(from_scratch_cycle_check(g, 0, 2));
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(TopologicalSort, DetectsCycle) {
    Digraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    EXPECT_TRUE(topological_sort(g).has_value());
    g.add_edge(2, 0);
    EXPECT_FALSE(topological_sort(g).has_value());
    EXPECT_FALSE(is_acyclic(g));
}

TEST(MaxOverAncestors, PropagatesAlongPaths) {
    const std::vector<std::int64_t> values{3, 0, 7, 1};
    const auto m = max_over_ancestors(diamond(), values);
    EXPECT_EQ(m, (std::vector<std::int64_t>{3, 3, 7, 7}));
}

// Properties over random DAGs.

TEST(OracleProperties, CountsAreDualUnderReversal) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Digraph g = testkit::graph_of(30, testkit::dag_stream(30, 0.15, seed));
        EXPECT_EQ(ancestor_edge_counts(g), descendant_edge_counts(g.reversed())) << seed;
    }
}

TEST(OracleProperties, AlphaPlusDeltaAtMostTwiceEdges) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Digraph g = testkit::graph_of(30, testkit::dag_stream(30, 0.2, seed));
        const auto a = ancestor_edge_counts(g);
        const auto d = descendant_edge_counts(g);
        for (std::size_t v = 0; v < 30; ++v) {
            EXPECT_LE(a[v] + d[v], 2 * g.edge_count());
        }
    }
}

TEST(OracleProperties, DfsFinishOrderIsTopological) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Digraph g = testkit::graph_of(40, testkit::dag_stream(40, 0.1, seed));
        // Reverse DFS finishing time, computed here independently of the library.
        std::vector<char> seen(40, 0);
        std::vector<std::int64_t> label(40, 0);
        std::int64_t clock = 40;
        std::function<void(VertexId)> visit = [&](VertexId x) {
            seen[x] = 1;
            for (VertexId w : g.out_neighbors(x)) {
                if (!seen[w]) {
                    visit(w);
                }
            }
            label[x] = --clock;
        };
        for (VertexId v = 0; v < 40; ++v) {
            if (!seen[v]) {
                visit(v);
            }
        }
        EXPECT_TRUE(verify_topological(label, g, Strictness::Strict)) << seed;
    }
}
