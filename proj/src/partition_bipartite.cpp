#include "gps/partition_bipartite.hpp"

#include <algorithm>

#include "gps/errors.hpp"

namespace gps {

namespace {

Vertex take_random(std::vector<Vertex>& set, Rng& rng) {
    const std::size_t i = rng.below(set.size());
    const Vertex v = set[i];
    set[i] = set.back();
    set.pop_back();
    return v;
}

}  // namespace

Vertex find_min(const OracleView& view, std::vector<Vertex> a_side, std::vector<Vertex> b_side, Rng& rng,
                BipartiteStats* stats) {
    if (a_side.empty()) throw EmptyInput("find_min needs a vertex on side A");
    if (stats) ++stats->find_min_calls;
    Vertex best = take_random(a_side, rng);
    bool best_in_a = true;
    while (true) {
        std::vector<Vertex>& pool = best_in_a ? b_side : a_side;
        if (pool.empty()) break;
        const Vertex u = take_random(pool, rng);
        if (stats) ++stats->find_min_steps;
        if (view.query(u, best) == Relation::Less) {
            best = u;
            best_in_a = !best_in_a;
        }
    }
    return best;
}

std::vector<Vertex> find_large(const OracleView& view, const std::vector<char>& in_a, Vertex pivot, Rng& rng,
                               BipartiteStats* stats) {
    // Side "B" is the pivot's side.
    const bool pivot_side = in_a[pivot] != 0;
    std::vector<Vertex> side_a, side_b;
    for (Vertex v : view.vertices()) {
        if (v == pivot) continue;
        ((in_a[v] != 0) == pivot_side ? side_b : side_a).push_back(v);
    }
    auto is_a = [&](Vertex v) { return (in_a[v] != 0) != pivot_side; };

    std::vector<Vertex> above_pivot;
    for (Vertex a : side_a)
        if (view.query(a, pivot) == Relation::Greater) above_pivot.push_back(a);

    std::vector<Vertex> remaining = above_pivot;
    std::vector<Vertex> found_b;
    std::vector<char> in_found(view.universe(), 0);
    while (!remaining.empty()) {
        const Vertex v = find_min(view, remaining, found_b, rng, stats);
        if (stats && stats->audit) {
            for (Vertex w : is_a(v) ? found_b : remaining) {
                const Relation r = stats->audit->relation(w, v);
                if ((view.reversed() ? flip(r) : r) == Relation::Less) ++stats->minimality_failures;
            }
        }
        if (is_a(v)) {
            remaining.erase(std::find(remaining.begin(), remaining.end(), v));
            for (Vertex b : side_b) {
                if (in_found[b]) continue;
                if (view.query(b, v) == Relation::Greater) {
                    in_found[b] = 1;
                    found_b.push_back(b);
                }
            }
        } else {
            std::erase_if(remaining, [&](Vertex a) { return view.query(a, v) == Relation::Greater; });
        }
    }
    std::vector<Vertex> out = above_pivot;
    out.insert(out.end(), found_b.begin(), found_b.end());
    std::sort(out.begin(), out.end());
    return out;
}

PartitionResult partition_bipartite(const OracleView& view, const std::vector<char>& in_a, Vertex pivot,
                                    Rng& rng, BipartiteStats* stats) {
    PartitionResult out;
    out.greater = find_large(view, in_a, pivot, rng, stats);
    out.less = find_large(view.flipped(), in_a, pivot, rng, stats);
    std::vector<char> mark(view.universe(), 0);
    mark[pivot] = 1;
    for (Vertex v : out.less) mark[v] = 1;
    for (Vertex v : out.greater) mark[v] = 1;
    for (Vertex v : view.vertices())
        if (!mark[v]) out.incomparable.push_back(v);
    if (stats) ++stats->partitions;
    return out;
}

PartitionOracle bipartite_partition_oracle(std::vector<char> in_a, BipartiteStats* stats) {
    return [in_a = std::move(in_a), stats](const OracleView& view, Vertex pivot, Rng& rng) {
        return partition_bipartite(view, in_a, pivot, rng, stats);
    };
}

std::vector<char> side_marks(int n, int n_a) {
    std::vector<char> marks(n, 0);
    for (int v = 0; v < n_a && v < n; ++v) marks[v] = 1;
    return marks;
}

}  // namespace gps
