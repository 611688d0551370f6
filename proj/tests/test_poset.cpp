#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gps/errors.hpp"
#include "gps/poset.hpp"
#include "gps/rng.hpp"
#include "oracles.hpp"

using namespace gps;

namespace {

Dag chain_dag(int n) {
    Dag d{n, {}};
    for (int i = 0; i + 1 < n; ++i) d.edges.emplace_back(i, i + 1);
    return d;
}

void expect_valid_decomposition(const Poset& p, const ChainDecomposition& chains) {
    std::vector<int> seen(p.size(), 0);
    for (const Chain& c : chains) {
        ASSERT_FALSE(c.empty());
        for (std::size_t i = 0; i < c.size(); ++i) {
            ++seen[c[i]];
            if (i > 0) EXPECT_TRUE(p.less(c[i - 1], c[i]));
        }
    }
    for (int v = 0; v < p.size(); ++v) EXPECT_EQ(seen[v], 1) << "vertex " << v;
}

}  // namespace

TEST(TransitiveClosure, ThreeChain) {
    const Poset p = transitive_closure(chain_dag(3));
    EXPECT_EQ(p.relation(0, 2), Relation::Less);
    EXPECT_EQ(p.relation(2, 0), Relation::Greater);
}

TEST(TransitiveClosure, EdgelessIsAntichain) {
    const Poset p = transitive_closure(Dag{4, {}});
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) EXPECT_EQ(p.relation(u, v), Relation::Incomparable);
}

TEST(TransitiveClosure, MatchesPathExistence) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(seed == 0 ? 7 : seed);
        const int n = 2 + static_cast<int>(seed % 11);
        const Dag d = oracle::random_dag(n, 0.3, rng);
        EXPECT_TRUE(oracle::matrix_of(transitive_closure(d)) == oracle::closure(n, d.edges)) << "seed " << seed;
    }
}

TEST(TransitiveClosure, RejectsCycles) {
    EXPECT_THROW(transitive_closure(Dag{2, {{0, 1}, {1, 0}}}), CyclicInput);
    EXPECT_THROW(transitive_closure(Dag{1, {{0, 0}}}), CyclicInput);
    EXPECT_THROW(transitive_closure(Dag{3, {{0, 1}, {1, 2}, {2, 0}}}), CyclicInput);
}

TEST(TransitiveReduction, DropsShortcut) {
    const Dag r = transitive_reduction(Dag{3, {{0, 1}, {1, 2}, {0, 2}}});
    EXPECT_EQ(r.edges, (std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}}));
}

TEST(TransitiveReduction, Edgeless) { EXPECT_TRUE(transitive_reduction(Dag{5, {}}).edges.empty()); }

TEST(TransitiveReduction, MinimalAndClosurePreserving) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        const int n = 2 + static_cast<int>(seed % 9);
        const Dag d = oracle::random_dag(n, 0.4, rng);
        const Dag r = transitive_reduction(d);
        const auto full = oracle::closure(n, d.edges);
        EXPECT_TRUE(oracle::closure(n, r.edges) == full);
        using EdgeSet = std::set<std::pair<Vertex, Vertex>>;
        const auto cov = oracle::covers(full);
        EXPECT_EQ(EdgeSet(r.edges.begin(), r.edges.end()), EdgeSet(cov.begin(), cov.end()));
        for (std::size_t i = 0; i < r.edges.size(); ++i) {
            auto rest = r.edges;
            rest.erase(rest.begin() + static_cast<long>(i));
            EXPECT_FALSE(oracle::closure(n, rest) == full) << "edge " << i << " is redundant";
        }
    }
}

TEST(Poset, AntisymmetricAndTransitive) {
    Rng rng(3);
    const Poset p = transitive_closure(oracle::random_dag(12, 0.3, rng));
    for (int u = 0; u < 12; ++u) {
        EXPECT_FALSE(p.less(u, u));
        for (int v = 0; v < 12; ++v) {
            EXPECT_EQ(p.relation(u, v) == Relation::Less, p.relation(v, u) == Relation::Greater);
            for (int w = 0; w < 12; ++w)
                if (p.less(u, v) && p.less(v, w)) EXPECT_TRUE(p.less(u, w));
        }
    }
}

TEST(Poset, AddLessKeepsClosure) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Rng rng(seed);
        const Dag d = oracle::random_dag(10, 0.3, rng);
        Poset p(10);
        std::vector<std::pair<Vertex, Vertex>> added;
        std::size_t total = 0;
        for (auto [u, v] : d.edges) {
            total += p.add_less(u, v);
            added.emplace_back(u, v);
            EXPECT_TRUE(oracle::matrix_of(p) == oracle::closure(10, added));
        }
        EXPECT_EQ(total, p.relation_count());
    }
}

TEST(Poset, AddLessRejectsCycle) {
    Poset p(3);
    p.add_less(0, 1);
    p.add_less(1, 2);
    EXPECT_THROW(p.add_less(2, 0), CycleInKnownEdges);
    EXPECT_THROW(p.add_less(1, 1), CycleInKnownEdges);
    EXPECT_EQ(p.add_less(0, 2), 0u);
}

TEST(Width, TotalOrderAndAntichain) {
    EXPECT_EQ(width(transitive_closure(chain_dag(5))), 1);
    EXPECT_EQ(width(transitive_closure(Dag{5, {}})), 5);
}

TEST(Width, MatchesSubsetEnumeration) {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        Rng rng(seed);
        const int n = 1 + static_cast<int>(seed % 12);
        const Poset p = transitive_closure(oracle::random_dag(n, 0.25, rng));
        const int w = oracle::width(oracle::matrix_of(p));
        EXPECT_EQ(width(p), w);
        const ChainDecomposition chains = chain_decomposition(p);
        EXPECT_EQ(static_cast<int>(chains.size()), w);
        expect_valid_decomposition(p, chains);
        const std::vector<Vertex> anti = max_antichain(p);
        EXPECT_EQ(static_cast<int>(anti.size()), w);
        for (Vertex a : anti)
            for (Vertex b : anti) EXPECT_FALSE(p.less(a, b));
    }
}

TEST(ChainDecomposition, Simple) {
    const auto total = chain_decomposition(transitive_closure(chain_dag(5)));
    ASSERT_EQ(total.size(), 1u);
    EXPECT_EQ(total[0], (Chain{0, 1, 2, 3, 4}));
    const auto anti = chain_decomposition(transitive_closure(Dag{3, {}}));
    EXPECT_EQ(anti, (ChainDecomposition{{0}, {1}, {2}}));
}

TEST(MinChainCover, SubsetMatchesWidthOfRestriction) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Rng rng(seed);
        const Poset p = transitive_closure(oracle::random_dag(12, 0.25, rng));
        std::vector<Vertex> subset;
        for (int v = 0; v < 12; ++v)
            if (rng.bernoulli(0.6)) subset.push_back(v);
        const auto chains = min_chain_cover(subset, [&](Vertex a, Vertex b) { return p.less(a, b); });
        oracle::Matrix sub(subset.size(), std::vector<char>(subset.size(), 0));
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = 0; j < subset.size(); ++j) sub[i][j] = p.less(subset[i], subset[j]);
        EXPECT_EQ(static_cast<int>(chains.size()), oracle::width(sub));
        std::vector<Vertex> covered;
        for (const Chain& c : chains) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                covered.push_back(c[i]);
                if (i > 0) EXPECT_TRUE(p.less(c[i - 1], c[i]));
            }
        }
        std::sort(covered.begin(), covered.end());
        EXPECT_EQ(covered, subset);
    }
}

TEST(PathCover, Simple) {
    EXPECT_EQ(path_cover(Dag{2, {{0, 1}}}), (std::vector<std::vector<Vertex>>{{0, 1}}));
    EXPECT_EQ(path_cover(Dag{3, {}}).size(), 3u);
}

TEST(PathCover, ValidPathsCountEqualsWidth) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        const int n = 2 + static_cast<int>(seed % 11);
        const Dag d = oracle::random_dag(n, 0.3, rng);
        const auto paths = path_cover(d);
        const auto reach = oracle::closure(n, d.edges);
        EXPECT_EQ(static_cast<int>(paths.size()), oracle::width(reach));
        std::set<std::pair<Vertex, Vertex>> edges(d.edges.begin(), d.edges.end());
        std::vector<char> covered(n, 0);
        for (const auto& path : paths) {
            for (std::size_t i = 0; i < path.size(); ++i) {
                covered[path[i]] = 1;
                if (i > 0) EXPECT_TRUE(edges.count({path[i - 1], path[i]})) << "not a DAG edge";
            }
        }
        EXPECT_EQ(std::count(covered.begin(), covered.end(), 1), n);
    }
}

TEST(LinearExtension, SortedAndSwapped) {
    const Poset p = transitive_closure(chain_dag(5));
    EXPECT_TRUE(is_linear_extension({0, 1, 2, 3, 4}, p));
    EXPECT_FALSE(is_linear_extension({0, 2, 1, 3, 4}, p));
    EXPECT_FALSE(is_linear_extension({0, 0, 2, 3, 4}, p));
    EXPECT_THROW(is_linear_extension({0, 1}, p), LengthMismatch);
}

TEST(LinearExtension, AllPermutationsAgreeWithPairScan) {
    Rng rng(6);
    const Poset p = transitive_closure(oracle::random_dag(6, 0.35, rng));
    const auto m = oracle::matrix_of(p);
    std::vector<Vertex> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    int accepted = 0;
    do {
        const bool ok = is_linear_extension(perm, p);
        EXPECT_EQ(ok, oracle::is_linear_extension(perm, m));
        accepted += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(static_cast<std::uint64_t>(accepted), oracle::count_extensions(m));
}
