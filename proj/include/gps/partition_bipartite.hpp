#pragma once

#include <vector>

#include "gps/framework.hpp"
#include "gps/oracle.hpp"
#include "gps/rng.hpp"

namespace gps {

struct BipartiteStats {
    long find_min_calls = 0;
    long find_min_steps = 0;
    long partitions = 0;
    /// Ground truth for the minimality audit; null disables it.
    const Poset* audit = nullptr;
    /// find_min results with a smaller vertex on the opposite input side.
    long minimality_failures = 0;
};

/// Random walk toward a locally minimal vertex of G[A' u B'] starting from a
/// uniform vertex of A'. The walk stops once the side opposite the current
/// vertex is used up. Throws EmptyInput if `a_side` is empty.
Vertex find_min(const OracleView& view, std::vector<Vertex> a_side, std::vector<Vertex> b_side, Rng& rng,
                BipartiteStats* stats = nullptr);

/// Everything above `pivot`. `in_a[v]` marks side A over the view universe;
/// a pivot on side A is handled by swapping the labels.
std::vector<Vertex> find_large(const OracleView& view, const std::vector<char>& in_a, Vertex pivot, Rng& rng,
                               BipartiteStats* stats = nullptr);

/// greater = find_large, less = find_large on reversed answers. Always exact.
PartitionResult partition_bipartite(const OracleView& view, const std::vector<char>& in_a, Vertex pivot,
                                    Rng& rng, BipartiteStats* stats = nullptr);

PartitionOracle bipartite_partition_oracle(std::vector<char> in_a, BipartiteStats* stats = nullptr);

/// Side marks for vertices [0, n_a) of a universe of size n.
std::vector<char> side_marks(int n, int n_a);

}  // namespace gps
