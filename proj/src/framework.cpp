#include "gps/framework.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>

#include "gps/errors.hpp"

namespace gps {

PartitionResult naive_partition(const OracleView& view, Vertex pivot) {
    PartitionResult out;
    for (Vertex x : view.vertices()) {
        if (x == pivot) continue;
        switch (view.query(x, pivot)) {
            case Relation::Less: out.less.push_back(x); break;
            case Relation::Greater: out.greater.push_back(x); break;
            default: out.incomparable.push_back(x); break;
        }
    }
    return out;
}

namespace {

void check_partition(const OracleView& view, Vertex pivot, const PartitionResult& part) {
    const std::size_t total = part.less.size() + part.incomparable.size() + part.greater.size();
    if (total + 1 != view.vertices().size())
        throw InvalidParams("partition does not cover the set minus the pivot");
    std::vector<char> seen(view.universe(), 0);
    seen[pivot] = 1;
    for (const auto* side : {&part.less, &part.incomparable, &part.greater}) {
        for (Vertex v : *side) {
            if (!view.contains(v) || seen[v]) throw InvalidParams("partition is not a split of the set");
            seen[v] = 1;
        }
    }
}

}  // namespace

LinearExtension part_to_le(const OracleView& view, const PartitionOracle& partition, Rng& rng) {
    // Explicit stack: a task is either a vertex to emit or a set to sort.
    using Task = std::variant<Vertex, std::vector<Vertex>>;
    std::vector<Task> stack;
    stack.emplace_back(view.vertices());
    LinearExtension out;
    out.reserve(view.vertices().size());
    while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        if (std::holds_alternative<Vertex>(task)) {
            out.push_back(std::get<Vertex>(task));
            continue;
        }
        auto& set = std::get<std::vector<Vertex>>(task);
        if (set.empty()) continue;
        if (set.size() == 1) {
            out.push_back(set.front());
            continue;
        }
        const Vertex pivot = rng.pick(set);
        OracleView sub = view.induced(set);
        PartitionResult part = partition(sub, pivot, rng);
        check_partition(sub, pivot, part);
        stack.emplace_back(std::move(part.greater));
        stack.emplace_back(std::move(part.incomparable));
        stack.emplace_back(pivot);
        stack.emplace_back(std::move(part.less));
    }
    return out;
}

namespace {

class ChainCover {
public:
    explicit ChainCover(int universe) : succ_(universe, -1), pred_(universe, -1), mark_(universe, 0) {}

    void insert(Vertex v, const Poset& known) {
        members_.push_back(v);
        ++stamp_;
        augment(v, known);
    }

    std::vector<Chain> chains() const {
        std::vector<Chain> out;
        for (Vertex v : members_) {
            if (pred_[v] != -1) continue;
            Chain c;
            for (Vertex x = v; x != -1; x = succ_[x]) c.push_back(x);
            out.push_back(std::move(c));
        }
        return out;
    }

private:
    // Alternating path from the unmatched right copy of y.
    bool augment(Vertex y, const Poset& known) {
        const std::vector<int> lower = known.down(y).to_vector();
        for (Vertex x : lower) {
            if (mark_[x] == stamp_) continue;
            mark_[x] = stamp_;
            if (succ_[x] == -1 || augment(succ_[x], known)) {
                succ_[x] = y;
                pred_[y] = x;
                return true;
            }
        }
        return false;
    }

    std::vector<Vertex> succ_;
    std::vector<Vertex> pred_;
    std::vector<long> mark_;
    long stamp_ = 0;
    std::vector<Vertex> members_;
};

void audit_pattern(const Poset& truth, const std::vector<Vertex>& seq, Vertex v) {
    int phase = 0;
    for (Vertex x : seq) {
        const Relation r = truth.relation(x, v);
        const int p = r == Relation::Less ? 0 : r == Relation::Incomparable ? 1 : 2;
        if (p < phase) throw std::logic_error("chain relations to " + std::to_string(v) + " are not monotone");
        phase = p;
    }
}

}  // namespace

Poset gps_from_le(const OracleView& view, const LinearExtension& order, const Poset* audit) {
    GpsFromLeStats stats;
    return gps_from_le(view, order, stats, audit);
}

Poset gps_from_le(const OracleView& view, const LinearExtension& order, GpsFromLeStats& stats,
                  const Poset* audit) {
    if (order.size() != view.vertices().size())
        throw LengthMismatch("order has " + std::to_string(order.size()) + " entries, set has " +
                             std::to_string(view.vertices().size()));
    const int universe = view.universe();
    std::vector<char> seen(universe, 0);
    for (Vertex v : order) {
        if (v < 0 || v >= universe || !view.contains(v) || seen[v])
            throw InconsistentExtension("order is not a permutation of the set");
        seen[v] = 1;
    }

    Poset known(universe);
    ChainCover cover(universe);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        const auto chains = cover.chains();
        stats.max_chains = std::max(stats.max_chains, static_cast<int>(chains.size()));
        for (const Chain& chain : chains) {
            std::vector<Vertex> seq;
            for (Vertex x : chain)
                if (view.has_edge(x, v)) seq.push_back(x);
            if (seq.empty()) continue;
            if (audit) audit_pattern(*audit, seq, v);
            ++stats.binary_searches;

            auto ask = [&](Vertex x) { return known.less(x, v) ? Relation::Less : view.query(x, v); };
            // a = length of the Less prefix.
            std::size_t lo = 0, hi = seq.size();
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (ask(seq[mid]) == Relation::Less)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            const std::size_t a = lo;
            // b = start of the Greater suffix.
            hi = seq.size();
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (ask(seq[mid]) == Relation::Greater)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            if (lo < seq.size())
                throw InconsistentExtension(std::to_string(v) + " precedes " + std::to_string(seq[lo]) +
                                            " but comes later");
            if (a > 0) known.add_less(seq[a - 1], v);
        }
        cover.insert(v, known);
    }
    return known;
}

}  // namespace gps
