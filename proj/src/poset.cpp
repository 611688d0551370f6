#include "gps/poset.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "gps/errors.hpp"
#include "matching.hpp"

namespace gps {

const char* to_string(Relation r) {
    switch (r) {
        case Relation::Less: return "less";
        case Relation::Greater: return "greater";
        default: return "incomparable";
    }
}

Poset::Poset(int n) : n_(n), down_(n, BitSet(n)), up_(n, BitSet(n)) {
    if (n < 0) throw InvalidParams("negative poset size");
}

Relation Poset::relation(Vertex u, Vertex v) const {
    if (less(u, v)) return Relation::Less;
    if (less(v, u)) return Relation::Greater;
    return Relation::Incomparable;
}

std::size_t Poset::add_less(Vertex u, Vertex v) {
    if (u == v || less(v, u))
        throw CycleInKnownEdges(std::to_string(u) + " < " + std::to_string(v));
    if (less(u, v)) return 0;
    BitSet lower = down_[u];
    lower.set(u);
    BitSet upper = up_[v];
    upper.set(v);
    std::size_t added = 0;
    lower.for_each([&](int x) {
        added += upper.count_missing_from(up_[x]);
        up_[x] |= upper;
    });
    upper.for_each([&](int y) { down_[y] |= lower; });
    return added;
}

std::size_t Poset::relation_count() const {
    std::size_t c = 0;
    for (const auto& row : up_) c += row.count();
    return c;
}

Dag Poset::reduction() const {
    Dag dag{n_, {}};
    for (Vertex u = 0; u < n_; ++u) {
        up_[u].for_each([&](int v) {
            if (!up_[u].intersects(down_[v])) dag.edges.emplace_back(u, v);
        });
    }
    return dag;
}

namespace {

void check_dag_shape(const Dag& dag) {
    if (dag.n < 0) throw MalformedInput("negative vertex count");
    for (const auto& [u, v] : dag.edges) {
        if (u < 0 || v < 0 || u >= dag.n || v >= dag.n)
            throw MalformedInput("edge endpoint out of range");
    }
}

}  // namespace

Poset transitive_closure(const Dag& dag) {
    check_dag_shape(dag);
    const int n = dag.n;
    std::vector<std::vector<Vertex>> out(n);
    std::vector<int> indeg(n, 0);
    for (const auto& [u, v] : dag.edges) {
        if (u == v) throw CyclicInput("self-loop at " + std::to_string(u));
        out[u].push_back(v);
        ++indeg[v];
    }
    std::vector<Vertex> order;
    order.reserve(n);
    for (Vertex v = 0; v < n; ++v)
        if (indeg[v] == 0) order.push_back(v);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex w : out[order[i]])
            if (--indeg[w] == 0) order.push_back(w);
    }
    if (static_cast<int>(order.size()) != n) throw CyclicInput("directed cycle present");

    Poset poset(n);
    std::vector<BitSet> reach(n, BitSet(n));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Vertex v = *it;
        for (Vertex w : out[v]) {
            reach[v].set(w);
            reach[v] |= reach[w];
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        reach[v].for_each([&](int w) { poset.add_less(v, w); });
    }
    return poset;
}

Dag transitive_reduction(const Dag& dag) { return transitive_closure(dag).reduction(); }

namespace {

detail::BipartiteMatching comparability_matching(const Poset& poset) {
    const int n = poset.size();
    detail::BipartiteMatching m(n);
    for (Vertex u = 0; u < n; ++u) poset.up(u).for_each([&](int v) { m.add_edge(u, v); });
    m.solve();
    return m;
}

}  // namespace

ChainDecomposition min_chain_cover(const std::vector<Vertex>& subset,
                                   const std::function<bool(Vertex, Vertex)>& less) {
    const int s = static_cast<int>(subset.size());
    detail::BipartiteMatching m(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            if (i != j && less(subset[i], subset[j])) m.add_edge(i, j);
    m.solve();
    ChainDecomposition chains;
    for (int i = 0; i < s; ++i) {
        if (m.match_right(i) != -1) continue;
        Chain chain;
        for (int j = i; j != -1; j = m.match_left(j)) chain.push_back(subset[j]);
        chains.push_back(std::move(chain));
    }
    return chains;
}

ChainDecomposition chain_decomposition(const Poset& poset) {
    const int n = poset.size();
    auto m = comparability_matching(poset);
    ChainDecomposition chains;
    for (Vertex v = 0; v < n; ++v) {
        if (m.match_right(v) != -1) continue;
        Chain chain;
        for (int x = v; x != -1; x = m.match_left(x)) chain.push_back(x);
        chains.push_back(std::move(chain));
    }
    return chains;
}

int width(const Poset& poset) {
    const int n = poset.size();
    if (n == 0) return 0;
    auto m = comparability_matching(poset);
    int matched = 0;
    for (Vertex v = 0; v < n; ++v)
        if (m.match_left(v) != -1) ++matched;
    return n - matched;
}

std::vector<Vertex> max_antichain(const Poset& poset) {
    const int n = poset.size();
    auto m = comparability_matching(poset);
    std::vector<char> left_seen, right_seen;
    m.alternating_reach(left_seen, right_seen);
    std::vector<Vertex> antichain;
    for (Vertex v = 0; v < n; ++v)
        if (left_seen[v] && !right_seen[v]) antichain.push_back(v);
    return antichain;
}

std::vector<std::vector<Vertex>> path_cover(const Dag& dag) {
    const Poset poset = transitive_closure(dag);
    const int n = dag.n;
    std::vector<std::vector<Vertex>> out(n);
    for (const auto& [u, v] : dag.edges) out[u].push_back(v);
    for (auto& row : out) std::sort(row.begin(), row.end());

    // Shortest DAG path from x to y, x < y in the closure.
    auto connect = [&](Vertex x, Vertex y) {
        std::vector<Vertex> parent(n, -1);
        std::queue<Vertex> q;
        q.push(x);
        parent[x] = x;
        while (!q.empty()) {
            const Vertex a = q.front();
            q.pop();
            if (a == y) break;
            for (Vertex b : out[a]) {
                if (parent[b] != -1 || (b != y && !poset.less(b, y))) continue;
                parent[b] = a;
                q.push(b);
            }
        }
        std::vector<Vertex> path;
        for (Vertex a = y; a != x; a = parent[a]) path.push_back(a);
        std::reverse(path.begin(), path.end());
        return path;
    };

    std::vector<std::vector<Vertex>> paths;
    for (const Chain& chain : chain_decomposition(poset)) {
        std::vector<Vertex> path{chain.front()};
        for (std::size_t i = 1; i < chain.size(); ++i) {
            auto segment = connect(chain[i - 1], chain[i]);
            path.insert(path.end(), segment.begin(), segment.end());
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

bool is_linear_extension(const LinearExtension& order, const Poset& poset) {
    const int n = poset.size();
    if (static_cast<int>(order.size()) != n)
        throw LengthMismatch("sequence has " + std::to_string(order.size()) + " entries, poset has " +
                             std::to_string(n));
    BitSet placed(n);
    for (Vertex v : order) {
        if (v < 0 || v >= n || placed.test(v)) return false;
        if (poset.up(v).intersects(placed)) return false;
        placed.set(v);
    }
    return true;
}

}  // namespace gps
