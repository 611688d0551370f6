#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "gps/bitset.hpp"

namespace gps {

using Vertex = int;
using LinearExtension = std::vector<Vertex>;
using Chain = std::vector<Vertex>;
using ChainDecomposition = std::vector<Chain>;

enum class Relation { Less, Greater, Incomparable };

inline Relation flip(Relation r) {
    switch (r) {
        case Relation::Less: return Relation::Greater;
        case Relation::Greater: return Relation::Less;
        default: return Relation::Incomparable;
    }
}

const char* to_string(Relation r);

/// Directed graph on vertices 0..n-1.
struct Dag {
    int n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    bool operator==(const Dag&) const = default;
};

/// Strict partial order stored as its transitive closure.
///
/// `add_less` keeps the relation transitively closed, so the same type
/// doubles as the store of orientations learned so far.
class Poset {
public:
    Poset() = default;
    explicit Poset(int n);

    int size() const { return n_; }

    bool less(Vertex u, Vertex v) const { return up_[u].test(v); }
    bool comparable(Vertex u, Vertex v) const { return less(u, v) || less(v, u); }
    Relation relation(Vertex u, Vertex v) const;

    /// Strict predecessors / successors.
    const BitSet& down(Vertex v) const { return down_[v]; }
    const BitSet& up(Vertex v) const { return up_[v]; }

    /// Records u < v and everything it implies. Returns the number of newly
    /// related pairs. Throws CycleInKnownEdges if v <= u already holds.
    std::size_t add_less(Vertex u, Vertex v);

    std::size_t relation_count() const;

    /// Covering pairs, sorted.
    Dag reduction() const;

    bool operator==(const Poset& other) const { return n_ == other.n_ && up_ == other.up_; }

private:
    int n_ = 0;
    std::vector<BitSet> down_;
    std::vector<BitSet> up_;
};

/// Throws CyclicInput on a directed cycle (self-loops included).
Poset transitive_closure(const Dag& dag);
Dag transitive_reduction(const Dag& dag);

int width(const Poset& poset);

/// Minimum chain decomposition (Dilworth). Chains are bottom-up and listed by
/// their lowest element.
ChainDecomposition chain_decomposition(const Poset& poset);

/// Minimum chain cover of `subset` under the transitive strict order `less`.
ChainDecomposition min_chain_cover(const std::vector<Vertex>& subset,
                                   const std::function<bool(Vertex, Vertex)>& less);

/// Minimum set of directed paths of `dag` covering every vertex. Paths may
/// share vertices; their number equals the width of the closure.
std::vector<std::vector<Vertex>> path_cover(const Dag& dag);

/// Throws LengthMismatch if the sequence length differs from the poset size.
bool is_linear_extension(const LinearExtension& order, const Poset& poset);

/// A maximum antichain, recovered from the matching behind the chain
/// decomposition. Its size equals `width`.
std::vector<Vertex> max_antichain(const Poset& poset);

}  // namespace gps
