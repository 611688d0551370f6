#pragma once

#include <string>
#include <vector>

#include "gps/framework.hpp"
#include "gps/oracle.hpp"
#include "gps/rng.hpp"

namespace gps {

struct SkipBfsOptions {
    /// R = k + ceil(log_multiplier * ln N).
    double log_multiplier = 18.0;
    bool record_trace = false;
};

struct SkipBfsEvent {
    int level = 0;
    Vertex vertex = 0;
    bool explored = false;
    int counter = 0;
};

struct SkipBfsResult {
    /// Union of the levels from 1 on, sorted.
    std::vector<Vertex> reached;
    /// levels[0] = {pivot}.
    std::vector<std::vector<Vertex>> levels;
    std::vector<SkipBfsEvent> trace;
    int threshold = 0;
    long explored = 0;
    long skipped = 0;
};

/// Vertex-skipping BFS toward the pivot along `u -> v` whenever u < v.
/// Every vertex starts with R hit points; each time a same-level vertex is
/// found to be above it, it loses one, and at zero it is no longer explored.
SkipBfsResult skip_bfs(const OracleView& view, Vertex pivot, int k, int big_n, Rng& rng,
                       const SkipBfsOptions& options = {});

/// Level sets of the true BFS toward `pivot` in the oriented graph on
/// view.vertices(). Test and audit use only.
std::vector<std::vector<Vertex>> true_bfs_levels(const QueryGraph& graph, const std::vector<Vertex>& vertices,
                                                 Vertex pivot, bool reversed);

struct ErStats {
    long partitions = 0;
    long explored = 0;
    long skipped = 0;
    /// Partition calls whose level sets differed from the true BFS levels.
    /// Only counted when an audit graph is supplied.
    long level_mismatches = 0;
    std::vector<SkipBfsEvent> trace;
};

struct ErOptions {
    SkipBfsOptions skip;
    /// Ground truth for the level audit; null disables it.
    const QueryGraph* audit = nullptr;
};

/// L from Skip-BFS, R from Skip-BFS on reversed answers, M the rest.
PartitionResult partition_er(const OracleView& view, Vertex pivot, int k, int big_n, Rng& rng,
                             const ErOptions& options = {}, ErStats* stats = nullptr);

PartitionOracle er_partition_oracle(int k, int big_n, const ErOptions& options = {}, ErStats* stats = nullptr);

/// Part-to-LE with partition_er, then the order is recovered from the
/// extension. N is the universe size.
Poset gps_er(const OracleView& view, int k, Rng& rng, const ErOptions& options = {}, ErStats* stats = nullptr);

/// Unknown width: k = 1, 2, 4, ... until two consecutive runs report the
/// same width w with w <= k.
Poset gps_er_unknown_k(const OracleView& view, Rng& rng, const ErOptions& options = {},
                       ErStats* stats = nullptr, int* final_k = nullptr);

/// One JSON object per line: {level, vertex, action, counter}.
std::string trace_to_jsonl(const std::vector<SkipBfsEvent>& trace);

}  // namespace gps
