#include "gps/partition_er.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "gps/errors.hpp"

namespace gps {

SkipBfsResult skip_bfs(const OracleView& view, Vertex pivot, int k, int big_n, Rng& rng,
                       const SkipBfsOptions& options) {
    if (!view.contains(pivot)) throw InvalidParams("pivot outside the view");
    SkipBfsResult out;
    const double log_n = big_n > 1 ? std::log(static_cast<double>(big_n)) : 0.0;
    out.threshold = k + static_cast<int>(std::ceil(options.log_multiplier * log_n));

    const int universe = view.universe();
    std::vector<int> level(universe, -1);
    std::vector<int> counter(universe, out.threshold);
    level[pivot] = 0;
    out.levels.push_back({pivot});

    std::vector<Vertex> first;
    view.for_each_neighbor(pivot, [&](Vertex u) {
        if (view.query(u, pivot) == Relation::Less) {
            level[u] = 1;
            first.push_back(u);
        }
    });
    out.levels.push_back(std::move(first));

    for (int l = 1; !out.levels[l].empty(); ++l) {
        std::vector<Vertex> next;
        rng.shuffle(out.levels[l]);
        for (Vertex v : out.levels[l]) {
            if (counter[v] <= 0) {
                ++out.skipped;
                if (options.record_trace) out.trace.push_back({l, v, false, counter[v]});
                continue;
            }
            ++out.explored;
            if (options.record_trace) out.trace.push_back({l, v, true, counter[v]});
            view.for_each_neighbor(v, [&](Vertex u) {
                if (level[u] != -1 && level[u] < l) return;
                if (view.query(u, v) != Relation::Less) return;
                if (level[u] == l) {
                    counter[u] = std::max(0, counter[u] - 1);
                } else if (level[u] == -1) {
                    level[u] = l + 1;
                    next.push_back(u);
                }
            });
        }
        out.levels.push_back(std::move(next));
    }
    out.levels.pop_back();

    for (std::size_t l = 1; l < out.levels.size(); ++l)
        out.reached.insert(out.reached.end(), out.levels[l].begin(), out.levels[l].end());
    std::sort(out.reached.begin(), out.reached.end());
    return out;
}

std::vector<std::vector<Vertex>> true_bfs_levels(const QueryGraph& graph, const std::vector<Vertex>& vertices,
                                                 Vertex pivot, bool reversed) {
    const int n = graph.size();
    std::vector<char> member(n, 0);
    for (Vertex v : vertices) member[v] = 1;
    std::vector<int> level(n, -1);
    level[pivot] = 0;
    std::vector<std::vector<Vertex>> levels{{pivot}};
    const Poset& truth = graph.truth();
    while (true) {
        std::vector<Vertex> next;
        for (Vertex v : levels.back()) {
            for (Vertex u : graph.neighbors(v)) {
                if (!member[u] || level[u] != -1) continue;
                if (reversed ? truth.less(v, u) : truth.less(u, v)) {
                    level[u] = static_cast<int>(levels.size());
                    next.push_back(u);
                }
            }
        }
        if (next.empty()) break;
        levels.push_back(std::move(next));
    }
    return levels;
}

namespace {

bool same_levels(std::vector<std::vector<Vertex>> a, std::vector<std::vector<Vertex>> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::sort(a[i].begin(), a[i].end());
        std::sort(b[i].begin(), b[i].end());
        if (a[i] != b[i]) return false;
    }
    return true;
}

}  // namespace

PartitionResult partition_er(const OracleView& view, Vertex pivot, int k, int big_n, Rng& rng,
                             const ErOptions& options, ErStats* stats) {
    SkipBfsResult down = skip_bfs(view, pivot, k, big_n, rng, options.skip);
    const OracleView reversed = view.flipped();
    SkipBfsResult up = skip_bfs(reversed, pivot, k, big_n, rng, options.skip);

    PartitionResult out;
    out.less = down.reached;
    out.greater = up.reached;
    std::vector<char> mark(view.universe(), 0);
    mark[pivot] = 1;
    for (Vertex v : out.less) mark[v] = 1;
    for (Vertex v : out.greater) mark[v] = 1;
    for (Vertex v : view.vertices())
        if (!mark[v]) out.incomparable.push_back(v);
    std::sort(out.incomparable.begin(), out.incomparable.end());

    if (stats) {
        ++stats->partitions;
        stats->explored += down.explored + up.explored;
        stats->skipped += down.skipped + up.skipped;
        if (options.skip.record_trace) {
            stats->trace.insert(stats->trace.end(), down.trace.begin(), down.trace.end());
            stats->trace.insert(stats->trace.end(), up.trace.begin(), up.trace.end());
        }
        if (options.audit) {
            const bool flip_down = view.reversed();
            const bool ok =
                same_levels(down.levels, true_bfs_levels(*options.audit, view.vertices(), pivot, flip_down)) &&
                same_levels(up.levels, true_bfs_levels(*options.audit, view.vertices(), pivot, !flip_down));
            if (!ok) ++stats->level_mismatches;
        }
    }
    return out;
}

PartitionOracle er_partition_oracle(int k, int big_n, const ErOptions& options, ErStats* stats) {
    return [=](const OracleView& view, Vertex pivot, Rng& rng) {
        return partition_er(view, pivot, k, big_n, rng, options, stats);
    };
}

Poset gps_er(const OracleView& view, int k, Rng& rng, const ErOptions& options, ErStats* stats) {
    const LinearExtension order = part_to_le(view, er_partition_oracle(k, view.universe(), options, stats), rng);
    return gps_from_le(view, order);
}

namespace {

int width_on(const Poset& poset, const std::vector<Vertex>& vertices) {
    return static_cast<int>(
        min_chain_cover(vertices, [&](Vertex a, Vertex b) { return poset.less(a, b); }).size());
}

}  // namespace

Poset gps_er_unknown_k(const OracleView& view, Rng& rng, const ErOptions& options, ErStats* stats,
                       int* final_k) {
    const int n = std::max(1, view.size());
    int previous = -1;
    Poset result;
    for (int k = 1;; k *= 2) {
        int w = -1;
        try {
            result = gps_er(view, k, rng, options, stats);
            w = width_on(result, view.vertices());
        } catch (const InconsistentExtension&) {
            w = -1;
        }
        if ((w != -1 && w == previous && w <= k) || k >= n) {
            if (final_k) *final_k = k;
            if (w == -1) result = gps_er(view, n, rng, options, stats);
            return result;
        }
        previous = w;
    }
}

std::string trace_to_jsonl(const std::vector<SkipBfsEvent>& trace) {
    std::string out;
    for (const auto& e : trace) {
        nlohmann::json j = {{"level", e.level},
                            {"vertex", e.vertex},
                            {"action", e.explored ? "explored" : "skipped"},
                            {"counter", e.counter}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace gps
