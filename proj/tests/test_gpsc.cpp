#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gps/errors.hpp"
#include "gps/gpsc.hpp"
#include "gps/instance.hpp"
#include "oracles.hpp"

using namespace gps;

namespace {

using Edges = std::vector<std::pair<Vertex, Vertex>>;

oracle::Matrix matrix_from(int n, const Edges& known) { return oracle::closure(n, known); }

Edges random_known(int n, double q, Rng& rng) { return oracle::random_dag(n, q, rng).edges; }

}  // namespace

TEST(CountExtensions, Basics) {
    EXPECT_EQ(count_feasible_extensions(3, {}), 6u);
    EXPECT_EQ(count_feasible_extensions(3, {{0, 1}, {1, 2}}), 1u);
    EXPECT_EQ(count_feasible_extensions(0, {}), 1u);
    EXPECT_EQ(count_feasible_extensions(5, {{0, 1}, {2, 3}}), oracle::count_extensions(matrix_from(5, {{0, 1}, {2, 3}})));
}

TEST(CountExtensions, MatchesPermutationScan) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Rng rng(seed);
        const int n = 2 + static_cast<int>(seed % 7);
        const Edges known = random_known(n, 0.3, rng);
        EXPECT_EQ(count_feasible_extensions(n, known), oracle::count_extensions(matrix_from(n, known)));
    }
}

TEST(CountExtensions, Errors) {
    EXPECT_THROW(count_feasible_extensions(3, {{0, 1}, {1, 0}}), CycleInKnownEdges);
    EXPECT_THROW(count_feasible_extensions(21, {}), TooLarge);
}

TEST(PredictEdge, ForcedByTransitivity) {
    EXPECT_EQ(predict_edge(3, {{0, 1}, {1, 2}}, 0, 2), std::make_pair(0, 2));
    EXPECT_EQ(predict_edge(3, {{0, 1}, {1, 2}}, 2, 0), std::make_pair(0, 2));
}

TEST(PredictEdge, TieGoesToLowerId) {
    EXPECT_EQ(predict_edge(4, {}, 3, 1), std::make_pair(1, 3));
    EXPECT_EQ(predict_edge(4, {}, 1, 3), std::make_pair(1, 3));
}

TEST(PredictEdge, MatchesBruteForceCounts) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Rng rng(seed);
        const int n = 6;
        const Edges known = random_known(n, 0.25, rng);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                Edges uv = known, vu = known;
                uv.emplace_back(u, v);
                vu.emplace_back(v, u);
                const auto cu = oracle::has_cycle(matrix_from(n, uv)) ? 0 : oracle::count_extensions(matrix_from(n, uv));
                const auto cv = oracle::has_cycle(matrix_from(n, vu)) ? 0 : oracle::count_extensions(matrix_from(n, vu));
                const auto want = cu >= cv ? std::make_pair(u, v) : std::make_pair(v, u);
                EXPECT_EQ(predict_edge(n, known, u, v), want);
            }
    }
}

TEST(MinChainCoverKnown, Examples) {
    Poset known(6);
    known.add_less(0, 1);
    known.add_less(1, 2);
    known.add_less(2, 3);
    const std::vector<char> all(6, 1);
    EXPECT_EQ(min_chain_cover({0, 2, 3}, known, all).size(), 1u);
    EXPECT_EQ(min_chain_cover({0, 4, 5}, Poset(6), all).size(), 3u);
    std::vector<char> some(6, 0);
    some[0] = some[1] = 1;
    // Unsorted members stay singletons even if related.
    EXPECT_EQ(min_chain_cover({0, 1, 2, 3}, known, some).size(), 3u);
}

TEST(MinChainCoverKnown, CountEqualsWidth) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Rng rng(seed);
        const Poset p = transitive_closure(oracle::random_dag(9, 0.3, rng));
        std::vector<Vertex> all(9);
        for (int i = 0; i < 9; ++i) all[i] = i;
        const auto chains = min_chain_cover(all, p, std::vector<char>(9, 1));
        EXPECT_EQ(static_cast<int>(chains.size()), oracle::width(oracle::matrix_of(p)));
        for (const Chain& c : chains)
            for (std::size_t i = 1; i < c.size(); ++i) EXPECT_TRUE(p.less(c[i - 1], c[i]));
    }
}

TEST(Predictor, SetAndQuery) {
    const Instance inst = gpsc_instance(10, 2, 0.5, 1);
    OracleSession s(inst.graph);
    const OracleView view(s);
    Predictor pred = perfect_predictor(view);
    for (int v = 0; v < 10; ++v) {
        EXPECT_TRUE(std::all_of(pred.wrong_counts(inst.graph.truth()).begin(), pred.wrong_counts(inst.graph.truth()).end(),
                                [](int w) { return w == 0; }));
        for (Vertex u : pred.predicted_in(v)) EXPECT_TRUE(inst.graph.truth().less(u, v));
    }
    const auto [a, b] = inst.graph.edges().front();
    const bool less = inst.graph.truth().less(a, b);
    if (less)
        pred.set(b, a);
    else
        pred.set(a, b);
    const auto wrong = pred.wrong_counts(inst.graph.truth());
    EXPECT_EQ(wrong[a], 1);
    EXPECT_EQ(wrong[b], 1);
    EXPECT_EQ(s.report().query_count, 0);
}

TEST(BuildPredictor, SingleChainHasNoWrongEdges) {
    const Instance inst = gpsc_instance(30, 1, 0.0, 3);
    OracleSession s(inst.graph);
    const OracleView view(s);
    Poset known(30);
    Rng rng(3);
    GpscStats stats;
    GpscOptions opts;
    opts.audit = &inst.graph.truth();
    build_predictor(view, known, rng, opts, &stats);
    EXPECT_EQ(stats.predictor_wrong_max, 0);
    EXPECT_EQ(stats.passed_tests, 30);
}

TEST(BuildPredictor, ExactModeWrongEdgesBounded) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = gpsc_instance(10, 3, 0.6, seed);
        OracleSession s(inst.graph);
        Poset known(10);
        Rng rng(seed);
        GpscStats stats;
        GpscOptions opts;
        opts.mode = PredictionMode::Exact;
        opts.audit = &inst.graph.truth();
        build_predictor(OracleView(s), known, rng, opts, &stats);
        EXPECT_LE(stats.predictor_wrong_max, 3 * stats.beta);
        EXPECT_EQ(stats.beta, static_cast<int>(std::ceil(std::sqrt(10.0) * std::log(10.0))));
    }
}

TEST(BuildPredictor, KnownRelationsAreVerified) {
    const Instance inst = gpsc_instance(40, 3, 0.4, 7);
    OracleSession s(inst.graph);
    Poset known(40);
    Rng rng(7);
    build_predictor(OracleView(s), known, rng);
    for (int u = 0; u < 40; ++u)
        for (int v = 0; v < 40; ++v)
            if (known.less(u, v)) EXPECT_TRUE(inst.graph.truth().less(u, v));
}

TEST(BuildPredictor, QueryAccounting) {
    const int n = 64;
    const Instance inst = gpsc_instance(n, 4, 0.3, 5);
    OracleSession s(inst.graph);
    Poset known(n);
    Rng rng(5);
    GpscStats stats;
    build_predictor(OracleView(s), known, rng, {}, &stats);
    const double ratio = static_cast<double>(stats.predictor_queries) / (n * std::sqrt(n));
    EXPECT_LE(ratio, 2.0 * std::log(n));
}

TEST(GpscSort, ReductionOnlyTotalOrder) {
    const Instance inst = gpsc_instance(40, 1, 0.0, 2);
    OracleSession s(inst.graph);
    Rng rng(2);
    EXPECT_EQ(gpsc_sort(OracleView(s), rng), inst.graph.truth());
    EXPECT_EQ(s.report().query_count, 39);
}

TEST(GpscSort, PerfectPredictorInsertCost) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 60, k = 1 + static_cast<int>(seed % 5);
        const Instance inst = gpsc_instance(n, k, 0.5, seed);
        OracleSession s(inst.graph);
        const OracleView view(s);
        GpscStats stats;
        GpscOptions opts;
        opts.audit = &inst.graph.truth();
        const Poset found = gpsc_sort_with(view, perfect_predictor(view), Poset(n), opts, &stats);
        EXPECT_EQ(found, inst.graph.truth());
        const auto cap = static_cast<std::int64_t>(k * std::ceil(std::log2(n)) + k);
        for (auto q : stats.insert_queries) EXPECT_LE(q, cap);
        EXPECT_LE(stats.max_cover, k);
        EXPECT_EQ(stats.existence_violations, 0);
    }
}

TEST(GpscSort, ExactRecovery) {
    const Instance inst = gpsc_instance(100, 4, 0.2, 13);
    OracleSession s(inst.graph);
    Rng rng(13);
    GpscOptions opts;
    opts.audit = &inst.graph.truth();
    GpscStats stats;
    EXPECT_EQ(gpsc_sort(OracleView(s), rng, opts, &stats), inst.graph.truth());
    EXPECT_EQ(stats.existence_violations, 0);
}

TEST(GpscSort, ExactOverSeedsAndModes) {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const int n = seed % 3 == 0 ? 12 : 50;
        const Instance inst = gpsc_instance(n, 1 + static_cast<int>(seed % 4), 0.3, seed);
        OracleSession s(inst.graph);
        Rng rng(seed);
        GpscOptions opts;
        opts.mode = seed % 2 ? PredictionMode::Sampled : PredictionMode::Auto;
        EXPECT_EQ(gpsc_sort(OracleView(s), rng, opts), inst.graph.truth()) << "seed " << seed;
        for (auto [u, v] : inst.graph.edges()) EXPECT_NE(s.query(u, v), Relation::Incomparable);
    }
}

TEST(GpscSort, WorksOnWeightCappedSubgraph) {
    const Instance inst = weighted_instance(40, 2, 3);
    OracleSession s(inst.graph);
    const auto levels = weight_levels(inst.graph);
    const OracleView cheap = OracleView(s).weight_capped(levels[0]);
    Rng rng(3);
    const Poset found = gpsc_sort(cheap, rng);
    for (int u = 0; u < 40; ++u)
        for (int v = 0; v < 40; ++v)
            if (found.less(u, v)) EXPECT_TRUE(inst.graph.truth().less(u, v));
}
