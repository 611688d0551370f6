#include <gtest/gtest.h>

#include <algorithm>

#include "gps/errors.hpp"
#include "gps/instance.hpp"
#include "gps/partition_bipartite.hpp"
#include "oracles.hpp"

using namespace gps;

namespace {

/// Complete bipartite graph between [0, n_a) and [n_a, n) over `truth`.
QueryGraph complete_bipartite(int n_a, const Poset& truth) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int a = 0; a < n_a; ++a)
        for (int b = n_a; b < truth.size(); ++b) edges.emplace_back(a, b);
    return QueryGraph(truth.size(), edges, {}, truth);
}

/// a0 < b0 < a1 < b1 < ... with A = [0, m), B = [m, 2m).
Poset alternating_chain(int m) {
    Dag d{2 * m, {}};
    for (int i = 0; i < m; ++i) {
        d.edges.emplace_back(i, m + i);
        if (i + 1 < m) d.edges.emplace_back(m + i, i + 1);
    }
    return transitive_closure(d);
}

bool opposite_side_minimal(const Poset& truth, const std::vector<char>& in_a, Vertex v,
                           const std::vector<Vertex>& a_side, const std::vector<Vertex>& b_side) {
    const auto& other = in_a[v] ? b_side : a_side;
    return std::none_of(other.begin(), other.end(), [&](Vertex u) { return truth.less(u, v); });
}

}  // namespace

TEST(FindMin, SingleStart) {
    const Instance inst = bipartite_instance(3, 3, 0.5, 1);
    OracleSession s(inst.graph);
    Rng rng(1);
    EXPECT_EQ(find_min(OracleView(s), {2}, {}, rng), 2);
    EXPECT_THROW(find_min(OracleView(s), {}, {3, 4}, rng), EmptyInput);
}

TEST(FindMin, ChainBottomBelowAllOfB) {
    // a0 < everything in B; the walk must end at a0.
    const Poset chain = alternating_chain(4);
    const QueryGraph g = complete_bipartite(4, chain);
    OracleSession s(g);
    BipartiteStats stats;
    stats.audit = &g.truth();
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Rng rng(seed);
        EXPECT_EQ(find_min(OracleView(s), {0, 1, 2, 3}, {4, 5, 6, 7}, rng, &stats), 0);
    }
    EXPECT_EQ(stats.minimality_failures, 0);
}

TEST(FindMin, MinimalAgainstOppositeSide) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = bipartite_instance(20, 20, 0.3, seed);
        const std::vector<char> in_a = side_marks(40, 20);
        OracleSession s(inst.graph);
        Rng rng(seed);
        BipartiteStats stats;
        stats.audit = &inst.graph.truth();
        std::vector<Vertex> a_side, b_side;
        for (int v = 0; v < 40; ++v)
            if (rng.bernoulli(0.7)) (in_a[v] ? a_side : b_side).push_back(v);
        if (a_side.empty()) a_side.push_back(0);
        const Vertex v = find_min(OracleView(s), a_side, b_side, rng, &stats);
        EXPECT_TRUE(opposite_side_minimal(inst.graph.truth(), in_a, v, a_side, b_side));
        EXPECT_EQ(stats.minimality_failures, 0);
        EXPECT_LE(s.report().query_count, 40);
    }
}

TEST(FindLarge, MaximumAndMinimum) {
    const Poset chain = alternating_chain(5);
    const QueryGraph g = complete_bipartite(5, chain);
    const std::vector<char> in_a = side_marks(10, 5);
    OracleSession s(g);
    Rng rng(3);
    EXPECT_TRUE(find_large(OracleView(s), in_a, 9, rng).empty());
    auto up = find_large(OracleView(s), in_a, 0, rng);
    std::sort(up.begin(), up.end());
    EXPECT_EQ(up, (std::vector<Vertex>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST(FindLarge, UpSetOnRandomInstance) {
    const Instance inst = bipartite_instance(20, 20, 0.3, 5);
    const std::vector<char> in_a = side_marks(40, 20);
    OracleSession s(inst.graph);
    Rng rng(5);
    for (Vertex pivot = 0; pivot < 40; ++pivot) {
        auto up = find_large(OracleView(s), in_a, pivot, rng);
        std::sort(up.begin(), up.end());
        std::vector<Vertex> want;
        for (int v = 0; v < 40; ++v)
            if (inst.graph.truth().less(pivot, v)) want.push_back(v);
        EXPECT_EQ(up, want) << "pivot " << pivot;
    }
}

TEST(PartitionBipartite, AntichainAcrossSides) {
    const QueryGraph g = complete_bipartite(4, Poset(9));
    OracleSession s(g);
    Rng rng(1);
    const PartitionResult r = partition_bipartite(OracleView(s), side_marks(9, 4), 6, rng);
    EXPECT_EQ(r.incomparable.size(), 8u);
}

TEST(PartitionBipartite, AlternatingChainMiddle) {
    const Poset chain = alternating_chain(5);
    const QueryGraph g = complete_bipartite(5, chain);
    OracleSession s(g);
    Rng rng(1);
    // Rank order: a0 b0 a1 b1 a2 ...; vertex 2 (a2) has rank 4.
    const PartitionResult r = partition_bipartite(OracleView(s), side_marks(10, 5), 2, rng);
    EXPECT_EQ(r.less.size(), 4u);
    EXPECT_EQ(r.greater.size(), 5u);
    EXPECT_TRUE(r.incomparable.empty());
}

TEST(PartitionBipartite, ExactOverSeeds) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = bipartite_instance(15, 18, seed % 2 ? 0.1 : 0.3, seed);
        OracleSession s(inst.graph);
        Rng rng(seed);
        const OracleView view(s);
        BipartiteStats stats;
        stats.audit = &inst.graph.truth();
        const auto in_a = side_marks(33, 15);
        for (Vertex pivot = 0; pivot < 33; pivot += 4)
            EXPECT_TRUE(oracle::same(partition_bipartite(view, in_a, pivot, rng, &stats),
                                     oracle::partition(inst.graph.truth(), view.vertices(), pivot)));
        EXPECT_EQ(stats.minimality_failures, 0);
    }
}

TEST(PartitionBipartite, ExactOnInducedSubsets) {
    const Instance inst = bipartite_instance(25, 25, 0.3, 9);
    OracleSession s(inst.graph);
    Rng rng(9);
    const auto in_a = side_marks(50, 25);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vertex> subset;
        for (int v = 0; v < 50; ++v)
            if (rng.bernoulli(0.5)) subset.push_back(v);
        if (subset.size() < 2) continue;
        const OracleView sub = OracleView(s).induced(subset);
        const Vertex pivot = rng.pick(subset);
        const PartitionResult got = partition_bipartite(sub, in_a, pivot, rng);
        // Relations inside an induced complete bipartite graph come from paths inside it.
        std::vector<std::pair<Vertex, Vertex>> oriented;
        for (Vertex u : subset)
            for (Vertex v : subset)
                if (inst.graph.has_edge(u, v) && inst.graph.truth().less(u, v)) oriented.emplace_back(u, v);
        const Poset local = transitive_closure(Dag{50, oriented});
        EXPECT_TRUE(oracle::same(got, oracle::partition(local, subset, pivot)));
    }
}

TEST(BipartiteGps, ReductionMapsBack) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 8 + static_cast<int>(seed);
        const Poset p = random_poset(n, 1 + static_cast<int>(seed % 4), seed);
        const Instance inst = bipartite_reduction(p);
        OracleSession s(inst.graph);
        Rng rng(seed);
        const OracleView view(s);
        const LinearExtension le = part_to_le(view, bipartite_partition_oracle(side_marks(2 * n, n)), rng);
        const Poset found = gps_from_le(view, le);
        EXPECT_EQ(found, inst.graph.truth());
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) EXPECT_EQ(found.less(u, v), p.less(u, v));
    }
}
