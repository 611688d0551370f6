#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "gps/instance.hpp"
#include "gps/partition_er.hpp"
#include "oracles.hpp"

using namespace gps;

namespace {

Vertex by_rank(const Poset& total, std::size_t rank) {
    for (int v = 0; v < total.size(); ++v)
        if (total.down(v).count() == rank) return v;
    return -1;
}

std::vector<Vertex> down_set(const Poset& p, Vertex v) {
    std::vector<Vertex> out;
    for (int u = 0; u < p.size(); ++u)
        if (p.less(u, v)) out.push_back(u);
    return out;
}

std::vector<std::vector<Vertex>> sorted_levels(std::vector<std::vector<Vertex>> levels) {
    for (auto& l : levels) std::sort(l.begin(), l.end());
    while (!levels.empty() && levels.back().empty()) levels.pop_back();
    return levels;
}

}  // namespace

TEST(SkipBfs, MaximumOfTotalOrder) {
    const Instance inst = er_instance(20, 1, 1.0, 2);
    OracleSession s(inst.graph);
    Rng rng(1);
    const Vertex top = by_rank(inst.graph.truth(), 19);
    const SkipBfsResult r = skip_bfs(OracleView(s), top, 1, 20, rng);
    EXPECT_EQ(r.reached.size(), 19u);
}

TEST(SkipBfs, MinimalPivot) {
    const Instance inst = er_instance(30, 3, 0.3, 2);
    OracleSession s(inst.graph);
    Rng rng(1);
    for (int v = 0; v < 30; ++v)
        if (inst.graph.truth().down(v).count() == 0) EXPECT_TRUE(skip_bfs(OracleView(s), v, 3, 30, rng).reached.empty());
}

TEST(SkipBfs, DownSetOnRandomInstance) {
    const Instance inst = er_instance(100, 3, 0.2, 11);
    OracleSession s(inst.graph);
    Rng rng(11);
    for (Vertex pivot = 0; pivot < 100; pivot += 7) {
        const SkipBfsResult r = skip_bfs(OracleView(s), pivot, 3, 100, rng);
        EXPECT_EQ(r.reached, down_set(inst.graph.truth(), pivot)) << "pivot " << pivot;
    }
}

TEST(SkipBfs, NeverReturnsNonPredecessors) {
    // With a tiny hit budget the output may miss vertices but never adds one.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = er_instance(60, 4, 0.5, seed);
        OracleSession s(inst.graph);
        Rng rng(seed);
        SkipBfsOptions opts;
        opts.log_multiplier = 0.0;
        for (Vertex pivot = 0; pivot < 60; pivot += 5) {
            const SkipBfsResult r = skip_bfs(OracleView(s), pivot, 1, 60, rng, opts);
            for (Vertex v : r.reached) EXPECT_TRUE(inst.graph.truth().less(v, pivot));
        }
    }
}

TEST(SkipBfs, LevelsMatchTrueBfs) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = er_instance(80, 3, 0.15, seed);
        OracleSession s(inst.graph);
        Rng rng(seed);
        const std::vector<char> all(80, 1);
        for (Vertex pivot = 0; pivot < 80; pivot += 9) {
            const SkipBfsResult r = skip_bfs(OracleView(s), pivot, 3, 80, rng);
            const auto expected = oracle::bfs_levels(inst.graph, all, pivot);
            EXPECT_EQ(sorted_levels(r.levels), expected);
            std::vector<Vertex> members(80);
            for (int v = 0; v < 80; ++v) members[v] = v;
            EXPECT_EQ(sorted_levels(true_bfs_levels(inst.graph, members, pivot, false)), expected);
        }
    }
}

TEST(SkipBfs, SkipOnlyAfterRHits) {
    const Instance inst = er_instance(200, 2, 1.0, 5);
    OracleSession s(inst.graph);
    Rng rng(5);
    SkipBfsOptions opts;
    opts.log_multiplier = 0.5;
    opts.record_trace = true;
    long skipped = 0;
    for (Vertex pivot = 0; pivot < 200; pivot += 17) {
        const SkipBfsResult r = skip_bfs(OracleView(s), pivot, 2, 200, rng, opts);
        EXPECT_EQ(r.threshold, 2 + static_cast<int>(std::ceil(0.5 * std::log(200.0))));
        for (const SkipBfsEvent& e : r.trace) {
            if (!e.explored) {
                EXPECT_EQ(e.counter, 0);
                ++skipped;
            } else {
                EXPECT_GT(e.counter, 0);
            }
        }
        EXPECT_EQ(r.skipped + r.explored, static_cast<long>(r.trace.size()));
    }
    EXPECT_GT(skipped, 0);
}

TEST(PartitionEr, Antichain) {
    const Instance inst = er_instance(12, 12, 0.5, 1);
    OracleSession s(inst.graph);
    Rng rng(1);
    const PartitionResult r = partition_er(OracleView(s), 4, 12, 12, rng);
    EXPECT_TRUE(r.less.empty());
    EXPECT_TRUE(r.greater.empty());
    EXPECT_EQ(r.incomparable.size(), 11u);
}

TEST(PartitionEr, MedianOfTotalOrder) {
    const Instance inst = er_instance(21, 1, 0.3, 3);
    OracleSession s(inst.graph);
    Rng rng(1);
    const PartitionResult r = partition_er(OracleView(s), by_rank(inst.graph.truth(), 10), 1, 21, rng);
    EXPECT_EQ(r.less.size(), 10u);
    EXPECT_EQ(r.greater.size(), 10u);
    EXPECT_TRUE(r.incomparable.empty());
}

TEST(PartitionEr, ExactOnRandomInstance) {
    const Instance inst = er_instance(100, 3, 0.2, 11);
    OracleSession s(inst.graph);
    Rng rng(3);
    const OracleView view(s);
    ErOptions opts;
    opts.audit = &inst.graph;
    ErStats stats;
    for (Vertex pivot = 0; pivot < 100; pivot += 3)
        EXPECT_TRUE(oracle::same(partition_er(view, pivot, 3, 100, rng, opts, &stats),
                                 oracle::partition(inst.graph.truth(), view.vertices(), pivot)));
    EXPECT_EQ(stats.level_mismatches, 0);
}

TEST(PartitionEr, InducedSubview) {
    const Instance inst = er_instance(60, 3, 0.4, 4);
    OracleSession s(inst.graph);
    Rng rng(4);
    std::vector<Vertex> subset;
    for (int v = 0; v < 60; v += 2) subset.push_back(v);
    const OracleView sub = OracleView(s).induced(subset);
    for (Vertex pivot : {0, 10, 30}) {
        const PartitionResult r = partition_er(sub, pivot, 3, 60, rng);
        // Within the subview only paths through its vertices count.
        for (Vertex v : r.less) EXPECT_TRUE(inst.graph.truth().less(v, pivot));
        for (Vertex v : r.greater) EXPECT_TRUE(inst.graph.truth().less(pivot, v));
        EXPECT_EQ(r.less.size() + r.greater.size() + r.incomparable.size(), subset.size() - 1);
    }
}

TEST(GpsEr, ExactRecovery) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const int k = 1 + static_cast<int>(seed % 5);
        const Instance inst = er_instance(80, k, seed % 2 ? 0.05 : 0.3, seed);
        OracleSession s(inst.graph);
        Rng rng(seed);
        EXPECT_EQ(gps_er(OracleView(s), k, rng), inst.graph.truth()) << "seed " << seed;
        EXPECT_LE(s.report().query_count, static_cast<std::int64_t>(inst.graph.edge_count()));
    }
}

TEST(GpsEr, UnknownWidth) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = er_instance(60, 3, 0.2, seed);
        OracleSession s(inst.graph);
        Rng rng(seed);
        int final_k = 0;
        EXPECT_EQ(gps_er_unknown_k(OracleView(s), rng, {}, nullptr, &final_k), inst.graph.truth());
        EXPECT_GE(final_k, 3);
    }
}

TEST(SkipBfs, TraceJsonLines) {
    std::vector<SkipBfsEvent> trace{{1, 4, true, 7}, {2, 9, false, 0}};
    std::istringstream in(trace_to_jsonl(trace));
    std::string line;
    std::vector<nlohmann::json> rows;
    while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0]["action"], "explored");
    EXPECT_EQ(rows[1]["action"], "skipped");
    EXPECT_EQ(rows[1]["vertex"], 9);
    EXPECT_EQ(rows[0]["counter"], 7);
    EXPECT_EQ(rows[0]["level"], 1);
}
