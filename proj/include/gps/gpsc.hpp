#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gps/oracle.hpp"
#include "gps/poset.hpp"
#include "gps/rng.hpp"

namespace gps {

/// Linear extensions of the order generated by `known` on 0..n-1.
/// Throws CycleInKnownEdges and TooLarge (n > 20).
std::uint64_t count_feasible_extensions(int n, const std::vector<std::pair<Vertex, Vertex>>& known);

/// Orientation of {u, v} that keeps more extensions, as (from, to). Ties go
/// to the lower id first.
std::pair<Vertex, Vertex> predict_edge(int n, const std::vector<std::pair<Vertex, Vertex>>& known, Vertex u,
                                       Vertex v);

/// Minimum chain cover of `subset` using only known relations among the
/// vertices in `sorted`; every other vertex is its own chain.
ChainDecomposition min_chain_cover(const std::vector<Vertex>& subset, const Poset& known,
                                   const std::vector<char>& sorted);

/// Predicted direction for every edge of a view.
class Predictor {
public:
    Predictor() = default;
    explicit Predictor(const OracleView& view);

    /// Predicted u -> v, i.e. u < v.
    bool predicts_less(Vertex u, Vertex v) const;
    void set(Vertex from, Vertex to);

    /// Vertices w with a predicted edge w -> v.
    std::vector<Vertex> predicted_in(Vertex v) const;

    /// Mispredicted incident edges per vertex (universe-sized).
    std::vector<int> wrong_counts(const Poset& truth) const;

    nlohmann::json dump(const Poset* truth = nullptr) const;

    const OracleView& view() const { return *view_; }

private:
    const QueryGraph* graph_ = nullptr;
    std::shared_ptr<OracleView> view_;
    std::vector<signed char> forward_;  // per edge id: 1 = first -> second, 0 = reverse, -1 = outside
};

/// Ground-truth predictor for tests.
Predictor perfect_predictor(const OracleView& view);

enum class PredictionMode { Auto, Exact, Sampled };

struct GpscOptions {
    double beta_multiplier = 1.0;
    /// Samples per disagreement round = ceil(cap_multiplier * ln n).
    double cap_multiplier = 4.0;
    PredictionMode mode = PredictionMode::Auto;
    /// Auto mode counts exactly up to this many vertices.
    int exact_limit = 14;
    int burn_in_sweeps = 4;
    int sample_sweeps = 16;
    /// Ground truth for audits; null disables them.
    const Poset* audit = nullptr;
};

struct GpscStats {
    long repredictions = 0;
    long failed_tests = 0;
    long passed_tests = 0;
    long global_queries = 0;
    long cap_hits = 0;
    std::int64_t predictor_queries = 0;
    int beta = 0;
    /// Audit results.
    int predictor_wrong_max = -1;
    long existence_violations = 0;
    int max_cover = 0;
    std::vector<std::int64_t> insert_queries;
};

/// Per-vertex tests followed by the global consistency phase. Verified
/// relations are added to `known`.
Predictor build_predictor(const OracleView& view, Poset& known, Rng& rng, const GpscOptions& options = {},
                          GpscStats* stats = nullptr);

/// Insert vertices one at a time, each time the candidate whose predicted
/// in-neighbourhood has the smallest chain cover over the sorted part.
Poset gpsc_sort(const OracleView& view, Rng& rng, const GpscOptions& options = {}, GpscStats* stats = nullptr);

/// Same with a given predictor; `known` holds relations verified so far.
Poset gpsc_sort_with(const OracleView& view, const Predictor& predictor, Poset known,
                     const GpscOptions& options = {}, GpscStats* stats = nullptr);

}  // namespace gps
