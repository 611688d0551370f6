#include "gps/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gps/errors.hpp"

namespace gps {

namespace {

Relation learn(const OracleView& view, Poset& known, Vertex u, Vertex v) {
    const Relation r = view.query(u, v);
    if (r == Relation::Less)
        known.add_less(u, v);
    else if (r == Relation::Greater)
        known.add_less(v, u);
    return r;
}

std::vector<double> view_weights(const OracleView& view) {
    std::vector<double> w;
    for (Vertex v : view.vertices()) {
        view.for_each_neighbor(v, [&](Vertex u) {
            if (u < v) w.push_back(view.weight(u, v));
        });
    }
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

class BudgetGuard {
public:
    BudgetGuard(OracleSession& session, double budget) : session_(session), saved_(session.budget()) {
        session.set_budget(budget);
    }
    ~BudgetGuard() { session_.set_budget(saved_); }
    BudgetGuard(const BudgetGuard&) = delete;
    BudgetGuard& operator=(const BudgetGuard&) = delete;

private:
    OracleSession& session_;
    double saved_;
};

}  // namespace

ChainMerge::ChainMerge(const OracleView& view, const ChainDecomposition& chains)
    : view_(view), chains_(chains), known_(view.universe()), level_(view.universe(), 0) {
    std::vector<char> seen(view.universe(), 0);
    std::size_t covered = 0;
    for (const Chain& c : chains_) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= view.universe() || !view.contains(c[i]) || seen[c[i]])
                throw InvalidParams("chains must partition the vertex set");
            seen[c[i]] = 1;
            ++covered;
            if (i > 0) known_.add_less(c[i - 1], c[i]);
        }
    }
    if (covered != view.vertices().size()) throw InvalidParams("chains must partition the vertex set");

    double min_positive = 0.0, max_weight = 0.0;
    for (double w : view_weights(view)) {
        if (w > 0 && (min_positive == 0.0 || w < min_positive)) min_positive = w;
        max_weight = std::max(max_weight, w);
    }
    const int start = min_positive > 0 ? static_cast<int>(std::ceil(std::log2(min_positive))) - 1 : 0;
    max_level_ = max_weight > 0 ? static_cast<int>(std::ceil(std::log2(max_weight))) : start;
    for (Vertex v : view.vertices()) level_[v] = start;
    const int n = view.size();
    ceil_log_n_ = n > 1 ? static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) : 0;

    // Free edges first.
    for (Vertex v : view.vertices()) {
        view.for_each_neighbor(v, [&](Vertex u) {
            if (u < v && view.weight(u, v) == 0.0 && !known_.comparable(u, v)) learn(view, known_, u, v);
        });
    }
}

double ChainMerge::probe(Vertex u) {
    const double before = view_.report().cost;
    ++level_[u];
    const double cap = std::ldexp(1.0, level_[u]);
    for (const Chain& chain : chains_) {
        std::vector<Vertex> seq;
        for (Vertex x : chain)
            if (x != u && view_.has_edge(x, u) && view_.weight(x, u) <= cap) seq.push_back(x);
        if (seq.empty()) continue;
        auto ask = [&](Vertex x) {
            if (known_.less(x, u)) return Relation::Less;
            if (known_.less(u, x)) return Relation::Greater;
            return learn(view_, known_, x, u);
        };
        std::size_t lo = 0, hi = seq.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (ask(seq[mid]) == Relation::Less)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo > 0) known_.add_less(seq[lo - 1], u);
    }
    return view_.report().cost - before;
}

LinearExtension ChainMerge::run(ChainSortStats* stats) {
    const int universe = view_.universe();
    const std::size_t total = view_.vertices().size();
    const double d = static_cast<double>(chains_.size());
    BitSet done(universe);
    LinearExtension order;
    order.reserve(total);
    while (order.size() < total) {
        ChainRound round;
        std::vector<std::pair<Vertex, double>> probe_costs;
        std::vector<Vertex> candidates;
        for (Vertex v : view_.vertices())
            if (!done.test(v) && known_.down(v).is_subset_of(done)) candidates.push_back(v);
        std::sort(candidates.begin(), candidates.end());
        while (candidates.size() > 1) {
            Vertex u = candidates.front();
            for (Vertex c : candidates)
                if (level_[c] < level_[u]) u = c;
            if (level_[u] >= max_level_) throw std::logic_error("candidate set stuck at the top level");
            const double cost = probe(u);
            probe_costs.emplace_back(u, cost);
            round.probes.emplace_back(u, level_[u]);
            if (stats) {
                ++stats->probes;
                const double bound = std::ldexp(1.0, level_[u]) * d * (ceil_log_n_ + 1);
                stats->probe_cost_max_ratio = std::max(stats->probe_cost_max_ratio, cost / bound);
            }
            std::vector<Vertex> kept;
            for (Vertex c : candidates) {
                if (known_.down(c).is_subset_of(done))
                    kept.push_back(c);
                else
                    round.eliminated.push_back(c);
            }
            candidates = std::move(kept);
        }
        if (candidates.empty()) throw std::logic_error("no candidate left; input chains are inconsistent");
        const Vertex f = candidates.front();
        done.set(f);
        order.push_back(f);
        if (stats) {
            round.finalized = f;
            if (!round.eliminated.empty()) round.last_eliminated_level = level_[round.eliminated.back()];
            for (const auto& [v, cost] : probe_costs)
                if (v == f) round.finalized_probe_cost += cost;
            stats->rounds.push_back(std::move(round));
        }
    }
    return order;
}

LinearExtension sort_chains(const OracleView& view, const ChainDecomposition& chains, ChainSortStats* stats) {
    ChainMerge merge(view, chains);
    return merge.run(stats);
}

int find_threshold(const std::vector<double>& weights, double opt_estimate, int n) {
    const int levels = static_cast<int>(weights.size());
    if (levels == 0) throw InvalidParams("no weights");
    for (int i = 1; i < levels; ++i)
        if (!(weights[i - 1] < weights[i])) throw InvalidParams("weights must be strictly increasing");
    const double nn = static_cast<double>(n);
    const double absolute = std::pow(nn, -1.0 / (2.0 * levels) - 0.5) * opt_estimate;
    if (weights[levels - 1] <= absolute) return levels;
    int hat = 1;
    while (weights[hat - 1] <= absolute) ++hat;
    const double gap = std::pow(nn, -1.0 / (2.0 * levels));
    for (int tau = hat - 1; tau >= 1; --tau)
        if (weights[tau - 1] / weights[tau] <= gap) return tau;
    throw NoFeasibleThreshold("estimate " + std::to_string(opt_estimate) + " is below the optimum's range");
}

double weighted_budget(int n, int levels, double opt_estimate, const WeightedOptions& options) {
    const double nn = static_cast<double>(n);
    return options.budget_constant * std::pow(nn, 1.0 - 1.0 / (2.0 * levels)) *
           std::pow(std::log(nn), options.polylog_exponent) * opt_estimate;
}

WeightedResult sort_weighted(const OracleView& view, double opt_estimate, Rng& rng, const WeightedOptions& options,
                             WeightedStats* stats) {
    const int n = view.size();
    if (n < 2) throw InvalidParams("weighted sorting needs n >= 2");
    WeightedResult result;
    result.opt_estimate = opt_estimate;
    WeightedRound round;
    round.opt_estimate = opt_estimate;
    const std::vector<double> levels = view_weights(view);
    const double start = view.report().cost;
    try {
        result.tau = find_threshold(levels, opt_estimate, n);
    } catch (const NoFeasibleThreshold&) {
        if (stats) stats->rounds.push_back(round);
        return result;
    }
    round.tau = result.tau;
    {
        BudgetGuard guard(view.session(),
                          start + weighted_budget(n, static_cast<int>(levels.size()), opt_estimate, options));
        GpscStats gpsc_stats;
        ChainSortStats chain_stats;
        try {
            const OracleView cheap = view.weight_capped(levels[result.tau - 1]);
            const Poset p_tau = gpsc_sort(cheap, rng, options.gpsc, &gpsc_stats);
            const ChainDecomposition chains =
                min_chain_cover(view.vertices(), [&](Vertex a, Vertex b) { return p_tau.less(a, b); });
            result.k_tau = static_cast<int>(chains.size());
            round.k_tau = result.k_tau;
            result.order = sort_chains(view, chains, &chain_stats);
            result.success = true;
        } catch (const BudgetExceeded&) {
            result.success = false;
        }
        if (stats) {
            stats->gpsc = std::move(gpsc_stats);
            stats->chains = std::move(chain_stats);
        }
    }
    round.success = result.success;
    round.cost = view.report().cost - start;
    if (stats) stats->rounds.push_back(round);
    return result;
}

WeightedResult sort_weighted_doubling(const OracleView& view, Rng& rng, const WeightedOptions& options,
                                      WeightedStats* stats) {
    double estimate = 0.0;
    for (double w : view_weights(view))
        if (w > 0) {
            estimate = w;
            break;
        }
    if (estimate == 0.0) estimate = 1.0;
    for (int r = 0; r < options.max_rounds; ++r) {
        WeightedResult result = sort_weighted(view, estimate, rng, options, stats);
        if (result.success) return result;
        estimate *= 2.0;
    }
    throw Error("doubling did not succeed within " + std::to_string(options.max_rounds) + " rounds");
}

}  // namespace gps
