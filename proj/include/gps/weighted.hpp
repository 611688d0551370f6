#pragma once

#include <optional>
#include <vector>

#include "gps/gpsc.hpp"
#include "gps/oracle.hpp"
#include "gps/poset.hpp"
#include "gps/rng.hpp"

namespace gps {

/// One round of chain merging: probes made, candidates eliminated in order,
/// and the vertex finalized at the end.
struct ChainRound {
    Vertex finalized = -1;
    std::vector<std::pair<Vertex, int>> probes;  // (vertex, level after the probe)
    std::vector<Vertex> eliminated;
    /// Level of the last eliminated candidate when the round ended; -1 if none.
    int last_eliminated_level = -1;
    double finalized_probe_cost = 0.0;
};

struct ChainSortStats {
    long probes = 0;
    double probe_cost_max_ratio = 0.0;  // probe cost / (2^level * d * (ceil(log2 n) + 1))
    std::vector<ChainRound> rounds;
};

/// Merge state for a total order covered by fixed chains.
///
/// Every vertex u carries a level l(u); all edges at u of weight at most
/// 2^l(u) have known directions. Starting level is ceil(log2 w') - 1 for
/// the smallest positive weight w'.
class ChainMerge {
public:
    ChainMerge(const OracleView& view, const ChainDecomposition& chains);

    int level(Vertex u) const { return level_[u]; }
    int max_level() const { return max_level_; }
    const Poset& known() const { return known_; }

    /// Raise l(u) by one and resolve u against every chain by binary search
    /// over the positions joined to u by edges of weight <= 2^l(u).
    /// Returns the cost charged.
    double probe(Vertex u);

    /// Finalize all vertices in ascending order.
    LinearExtension run(ChainSortStats* stats = nullptr);

private:
    const OracleView& view_;
    ChainDecomposition chains_;
    Poset known_;
    std::vector<int> level_;
    int max_level_ = 0;
    int ceil_log_n_ = 0;
};

LinearExtension sort_chains(const OracleView& view, const ChainDecomposition& chains,
                            ChainSortStats* stats = nullptr);

/// 1-based threshold index into the strictly increasing `weights`.
/// Throws NoFeasibleThreshold when no index passes the gap test.
int find_threshold(const std::vector<double>& weights, double opt_estimate, int n);

struct WeightedOptions {
    double budget_constant = 8.0;
    int polylog_exponent = 3;
    GpscOptions gpsc;
    int max_rounds = 200;
};

struct WeightedRound {
    double opt_estimate = 0.0;
    int tau = 0;  // 0 when no threshold was found
    int k_tau = 0;
    bool success = false;
    double cost = 0.0;
};

struct WeightedStats {
    std::vector<WeightedRound> rounds;
    GpscStats gpsc;
    ChainSortStats chains;
};

struct WeightedResult {
    bool success = false;
    LinearExtension order;
    int tau = 0;
    int k_tau = 0;
    double opt_estimate = 0.0;
};

/// One attempt with a guessed optimum. Returns success = false when the
/// budget runs out or no threshold exists. Throws InvalidParams for n < 2.
WeightedResult sort_weighted(const OracleView& view, double opt_estimate, Rng& rng,
                             const WeightedOptions& options = {}, WeightedStats* stats = nullptr);

/// Starts at the smallest positive weight and doubles until success.
WeightedResult sort_weighted_doubling(const OracleView& view, Rng& rng, const WeightedOptions& options = {},
                                      WeightedStats* stats = nullptr);

/// C * n^(1 - 1/(2W)) * ln(n)^e * opt_estimate.
double weighted_budget(int n, int levels, double opt_estimate, const WeightedOptions& options = {});

}  // namespace gps
