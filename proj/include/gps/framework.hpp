#pragma once

#include <functional>
#include <vector>

#include "gps/oracle.hpp"
#include "gps/poset.hpp"
#include "gps/rng.hpp"

namespace gps {

/// Split of X \ {p} relative to a pivot p.
struct PartitionResult {
    std::vector<Vertex> less;
    std::vector<Vertex> incomparable;
    std::vector<Vertex> greater;
};

/// Partitions view.vertices() \ {pivot}.
using PartitionOracle = std::function<PartitionResult(const OracleView&, Vertex, Rng&)>;

/// Queries the pivot against every other vertex. Needs a complete view.
PartitionResult naive_partition(const OracleView& view, Vertex pivot);

/// Quicksort-style linear extension: LE(L), p, LE(M), LE(R) with a uniform
/// pivot at every step.
LinearExtension part_to_le(const OracleView& view, const PartitionOracle& partition, Rng& rng);

/// Recovers the order on view.vertices() from a linear extension of it.
/// Each prefix keeps a minimum chain cover of what is known so far; the next
/// vertex is located on every chain by binary search over the chain positions
/// that share an edge with it. The result has size view.universe().
///
/// Throws InconsistentExtension when an answer contradicts `order`.
/// With `audit` set, every searched subsequence is checked against it.
Poset gps_from_le(const OracleView& view, const LinearExtension& order, const Poset* audit = nullptr);

struct GpsFromLeStats {
    int max_chains = 0;
    long binary_searches = 0;
};

Poset gps_from_le(const OracleView& view, const LinearExtension& order, GpsFromLeStats& stats,
                  const Poset* audit = nullptr);

}  // namespace gps
