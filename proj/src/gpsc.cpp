#include "gps/gpsc.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "gps/errors.hpp"

namespace gps {

namespace {

constexpr int kExactCap = 20;

std::vector<std::uint32_t> predecessor_masks(int n, const std::vector<std::pair<Vertex, Vertex>>& known) {
    Dag dag{n, known};
    Poset closure;
    try {
        closure = transitive_closure(dag);
    } catch (const CyclicInput& e) {
        throw CycleInKnownEdges(e.what());
    } catch (const MalformedInput& e) {
        throw InvalidParams(e.what());
    }
    std::vector<std::uint32_t> pred(n, 0);
    for (Vertex v = 0; v < n; ++v) closure.down(v).for_each([&](int u) { pred[v] |= 1U << u; });
    return pred;
}

std::uint64_t count_from_masks(int n, const std::vector<std::uint32_t>& pred) {
    const std::size_t states = std::size_t{1} << n;
    std::vector<std::uint64_t> f(states, 0);
    f[0] = 1;
    for (std::size_t s = 0; s < states; ++s) {
        if (!f[s]) continue;
        for (int u = 0; u < n; ++u) {
            const std::uint32_t bit = 1U << u;
            if ((s & bit) || (pred[u] & ~s)) continue;
            f[s | bit] += f[s];
        }
    }
    return f[states - 1];
}

}  // namespace

std::uint64_t count_feasible_extensions(int n, const std::vector<std::pair<Vertex, Vertex>>& known) {
    if (n < 0) throw InvalidParams("negative vertex count");
    if (n > kExactCap) throw TooLarge("exact counting supports at most 20 vertices");
    return count_from_masks(n, predecessor_masks(n, known));
}

std::pair<Vertex, Vertex> predict_edge(int n, const std::vector<std::pair<Vertex, Vertex>>& known, Vertex u,
                                       Vertex v) {
    if (n > kExactCap) throw TooLarge("exact counting supports at most 20 vertices");
    predecessor_masks(n, known);  // validates the known edges
    auto count_with = [&](Vertex a, Vertex b) -> std::uint64_t {
        auto edges = known;
        edges.emplace_back(a, b);
        try {
            return count_from_masks(n, predecessor_masks(n, edges));
        } catch (const CycleInKnownEdges&) {
            return 0;
        }
    };
    const std::uint64_t forward = count_with(u, v);
    const std::uint64_t backward = count_with(v, u);
    if (forward > backward) return {u, v};
    if (backward > forward) return {v, u};
    return {std::min(u, v), std::max(u, v)};
}

ChainDecomposition min_chain_cover(const std::vector<Vertex>& subset, const Poset& known,
                                   const std::vector<char>& sorted) {
    std::vector<Vertex> inside;
    ChainDecomposition singles;
    for (Vertex v : subset) {
        if (sorted[v])
            inside.push_back(v);
        else
            singles.push_back({v});
    }
    ChainDecomposition chains = min_chain_cover(inside, [&](Vertex a, Vertex b) { return known.less(a, b); });
    chains.insert(chains.end(), singles.begin(), singles.end());
    return chains;
}

Predictor::Predictor(const OracleView& view)
    : graph_(&view.session().graph()), view_(std::make_shared<OracleView>(view)) {
    forward_.assign(graph_->edge_count(), -1);
    for (Vertex v : view.vertices()) {
        view.for_each_neighbor(v, [&](Vertex u) {
            if (u > v) return;
            const int id = graph_->edge_id(u, v);
            forward_[id] = graph_->edges()[id].first == u ? 1 : 0;  // lower id first
        });
    }
}

bool Predictor::predicts_less(Vertex u, Vertex v) const {
    const int id = graph_->edge_id(u, v);
    if (id < 0 || forward_[id] < 0) throw NotAnEdge(std::to_string(u) + "-" + std::to_string(v));
    const bool u_first = graph_->edges()[id].first == u;
    return (forward_[id] == 1) == u_first;
}

void Predictor::set(Vertex from, Vertex to) {
    const int id = graph_->edge_id(from, to);
    if (id < 0 || forward_[id] < 0) throw NotAnEdge(std::to_string(from) + "-" + std::to_string(to));
    forward_[id] = graph_->edges()[id].first == from ? 1 : 0;
}

std::vector<Vertex> Predictor::predicted_in(Vertex v) const {
    std::vector<Vertex> out;
    view_->for_each_neighbor(v, [&](Vertex u) {
        if (predicts_less(u, v)) out.push_back(u);
    });
    return out;
}

std::vector<int> Predictor::wrong_counts(const Poset& truth) const {
    std::vector<int> wrong(graph_->size(), 0);
    for (std::size_t id = 0; id < forward_.size(); ++id) {
        if (forward_[id] < 0) continue;
        auto [a, b] = graph_->edges()[id];
        if (forward_[id] == 0) std::swap(a, b);
        if (!truth.less(a, b)) {
            ++wrong[a];
            ++wrong[b];
        }
    }
    return wrong;
}

nlohmann::json Predictor::dump(const Poset* truth) const {
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t id = 0; id < forward_.size(); ++id) {
        if (forward_[id] < 0) continue;
        auto [a, b] = graph_->edges()[id];
        if (forward_[id] == 0) std::swap(a, b);
        edges.push_back({a, b});
    }
    nlohmann::json j = {{"edges", std::move(edges)}};
    if (truth) j["wrong"] = wrong_counts(*truth);
    return j;
}

Predictor perfect_predictor(const OracleView& view) {
    Predictor p(view);
    const Poset& truth = view.session().graph().truth();
    for (Vertex v : view.vertices()) {
        view.for_each_neighbor(v, [&](Vertex u) {
            const bool less = view.reversed() ? truth.less(v, u) : truth.less(u, v);
            if (less) p.set(u, v);
        });
    }
    return p;
}

namespace {

Relation learn(const OracleView& view, Poset& known, Vertex u, Vertex v) {
    const Relation r = view.query(u, v);
    if (r == Relation::Less)
        known.add_less(u, v);
    else if (r == Relation::Greater)
        known.add_less(v, u);
    return r;
}

/// Re-predicts every edge of a view from the relations known so far.
class PredictionEngine {
public:
    PredictionEngine(const OracleView& view, const GpscOptions& options, Rng& rng)
        : view_(view), options_(options), rng_(rng), ids_(view.vertices()) {
        const int s = static_cast<int>(ids_.size());
        local_.assign(view.universe(), -1);
        for (int i = 0; i < s; ++i) local_[ids_[i]] = i;
        exact_ = options.mode == PredictionMode::Exact ||
                 (options.mode == PredictionMode::Auto && s <= options.exact_limit);
        if (exact_ && s > kExactCap) throw TooLarge("exact prediction supports at most 20 vertices");
        if (!exact_) {
            perm_ = ids_;
            rng_.shuffle(perm_);
            pos_.assign(view.universe(), -1);
        }
    }

    void predict(const Poset& known, Predictor& out) {
        if (exact_)
            predict_exact(known, out);
        else
            predict_sampled(known, out);
    }

private:
    void apply_known_or(const Poset& known, Predictor& out, Vertex a, Vertex b, bool a_first) {
        if (known.less(a, b))
            out.set(a, b);
        else if (known.less(b, a))
            out.set(b, a);
        else if (a_first)
            out.set(a, b);
        else
            out.set(b, a);
    }

    void predict_exact(const Poset& known, Predictor& out) {
        const int s = static_cast<int>(ids_.size());
        std::vector<std::uint32_t> pred(s, 0), nbr(s, 0);
        for (int i = 0; i < s; ++i) {
            known.down(ids_[i]).for_each([&](int u) {
                if (local_[u] >= 0) pred[i] |= 1U << local_[u];
            });
            view_.for_each_neighbor(ids_[i], [&](Vertex u) { nbr[i] |= 1U << local_[u]; });
        }
        const std::size_t states = std::size_t{1} << s;
        const std::uint32_t full = static_cast<std::uint32_t>(states - 1);
        std::vector<std::uint64_t> f(states, 0), g(states, 0);
        f[0] = 1;
        for (std::size_t m = 0; m < states; ++m) {
            if (!f[m]) continue;
            for (int u = 0; u < s; ++u) {
                const std::uint32_t bit = 1U << u;
                if ((m & bit) || (pred[u] & ~m)) continue;
                f[m | bit] += f[m];
            }
        }
        g[full] = 1;
        for (std::size_t m = states - 1; m-- > 0;) {
            if (!f[m]) continue;
            std::uint64_t total = 0;
            for (int u = 0; u < s; ++u) {
                const std::uint32_t bit = 1U << u;
                if ((m & bit) || (pred[u] & ~m)) continue;
                total += g[m | bit];
            }
            g[m] = total;
        }
        // before[u * s + v]: extensions placing u ahead of v.
        std::vector<std::uint64_t> before(static_cast<std::size_t>(s) * s, 0);
        for (std::size_t m = 0; m < states; ++m) {
            if (!f[m]) continue;
            for (int u = 0; u < s; ++u) {
                const std::uint32_t bit = 1U << u;
                if ((m & bit) || (pred[u] & ~m)) continue;
                const std::uint64_t w = f[m] * g[m | bit];
                std::uint32_t rest = nbr[u] & ~static_cast<std::uint32_t>(m) & ~bit;
                while (rest) {
                    const int v = std::countr_zero(rest);
                    before[static_cast<std::size_t>(u) * s + v] += w;
                    rest &= rest - 1;
                }
            }
        }
        for (int i = 0; i < s; ++i) {
            view_.for_each_neighbor(ids_[i], [&](Vertex b) {
                const int j = local_[b];
                if (j < i) return;
                const std::uint64_t ij = before[static_cast<std::size_t>(i) * s + j];
                const std::uint64_t ji = before[static_cast<std::size_t>(j) * s + i];
                const Vertex a = ids_[i];
                apply_known_or(known, out, a, b, ij > ji || (ij == ji && a < b));
            });
        }
    }

    void repair(const Poset& known) {
        const int s = static_cast<int>(perm_.size());
        for (int i = 0; i < s; ++i) pos_[perm_[i]] = i;
        BitSet later(view_.universe());
        bool ok = true;
        for (int i = s - 1; i >= 0 && ok; --i) {
            if (known.down(perm_[i]).intersects(later)) ok = false;
            later.set(perm_[i]);
        }
        if (ok) return;
        // Kahn's algorithm, preferring the current position.
        std::vector<int> indeg(view_.universe(), 0);
        for (Vertex v : perm_) {
            known.down(v).for_each([&](int u) {
                if (local_[u] >= 0) ++indeg[v];
            });
        }
        using Item = std::pair<int, Vertex>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
        for (Vertex v : perm_)
            if (indeg[v] == 0) ready.emplace(pos_[v], v);
        std::vector<Vertex> next;
        next.reserve(s);
        while (!ready.empty()) {
            const Vertex v = ready.top().second;
            ready.pop();
            next.push_back(v);
            known.up(v).for_each([&](int w) {
                if (local_[w] >= 0 && --indeg[w] == 0) ready.emplace(pos_[w], w);
            });
        }
        perm_ = std::move(next);
        for (int i = 0; i < s; ++i) pos_[perm_[i]] = i;
    }

    void sweep(const Poset& known) {
        const int s = static_cast<int>(perm_.size());
        for (int step = 0; step < s; ++step) {
            const int i = rng_.index(static_cast<std::size_t>(s - 1));
            const Vertex x = perm_[i];
            const Vertex y = perm_[i + 1];
            if ((rng_.next() & 1U) && !known.less(x, y)) std::swap(perm_[i], perm_[i + 1]);
        }
    }

    void predict_sampled(const Poset& known, Predictor& out) {
        const int s = static_cast<int>(perm_.size());
        repair(known);
        std::vector<double> rank_sum(view_.universe(), 0.0);
        if (s > 1) {
            for (int i = 0; i < options_.burn_in_sweeps; ++i) sweep(known);
            for (int i = 0; i < std::max(1, options_.sample_sweeps); ++i) {
                sweep(known);
                for (int j = 0; j < s; ++j) rank_sum[perm_[j]] += j;
            }
        }
        for (Vertex a : ids_) {
            view_.for_each_neighbor(a, [&](Vertex b) {
                if (b < a) return;
                apply_known_or(known, out, a, b, rank_sum[a] <= rank_sum[b]);
            });
        }
    }

    const OracleView& view_;
    const GpscOptions& options_;
    Rng& rng_;
    std::vector<Vertex> ids_;
    std::vector<int> local_;
    bool exact_ = false;
    std::vector<Vertex> perm_;
    std::vector<int> pos_;
};

}  // namespace

Predictor build_predictor(const OracleView& view, Poset& known, Rng& rng, const GpscOptions& options,
                          GpscStats* stats) {
    GpscStats local_stats;
    GpscStats& st = stats ? *stats : local_stats;
    const auto start = view.report().query_count;
    Predictor predictor(view);
    const int s = view.size();
    const double ln_s = s > 1 ? std::log(static_cast<double>(s)) : 0.0;
    st.beta = static_cast<int>(std::ceil(options.beta_multiplier * std::sqrt(static_cast<double>(s)) * ln_s));
    if (s <= 1) return predictor;

    PredictionEngine engine(view, options, rng);
    auto repredict = [&] {
        engine.predict(known, predictor);
        ++st.repredictions;
    };
    repredict();

    // Per-vertex tests.
    const std::size_t sample_size = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(s))));
    const int universe = view.universe();
    std::vector<std::vector<Vertex>> nbrs(universe);
    std::vector<std::vector<char>> frozen(universe);  // 1 = neighbour predicted below v
    for (Vertex v : view.vertices()) {
        nbrs[v] = view.neighbors(v);
        if (nbrs[v].empty()) continue;
        while (true) {
            std::vector<Vertex> pool = nbrs[v];
            const std::size_t take = std::min(sample_size, pool.size());
            bool wrong = false;
            for (std::size_t i = 0; i < take; ++i) {
                std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
                const Vertex u = pool[i];
                const bool predicted = predictor.predicts_less(u, v);
                const Relation r = learn(view, known, u, v);
                if ((r == Relation::Less) != predicted) wrong = true;
            }
            if (!wrong) {
                ++st.passed_tests;
                frozen[v].resize(nbrs[v].size());
                for (std::size_t i = 0; i < nbrs[v].size(); ++i) frozen[v][i] = predictor.predicts_less(nbrs[v][i], v);
                break;
            }
            ++st.failed_tests;
            repredict();
        }
    }

    // Global consistency. A frozen entry whose edge has become known reads
    // as the known direction.
    const int two_beta = 2 * st.beta;
    const int cap = std::max(1, static_cast<int>(std::ceil(options.cap_multiplier * ln_s)));
    auto frozen_less = [&](Vertex v, std::size_t i) {
        const Vertex u = nbrs[v][i];
        if (known.less(u, v)) return true;
        if (known.less(v, u)) return false;
        return frozen[v][i] != 0;
    };
    auto disagreeing = [&](Vertex v) {
        std::vector<Vertex> out;
        for (std::size_t i = 0; i < nbrs[v].size(); ++i)
            if (frozen_less(v, i) != predictor.predicts_less(nbrs[v][i], v)) out.push_back(nbrs[v][i]);
        return out;
    };
    std::vector<int> diff(universe, 0);
    auto refresh_all = [&] {
        for (Vertex v : view.vertices()) diff[v] = static_cast<int>(disagreeing(v).size());
    };
    refresh_all();
    std::vector<char> exhausted(universe, 0);
    while (true) {
        Vertex target = -1;
        for (Vertex v : view.vertices()) {
            if (!exhausted[v] && diff[v] > two_beta) {
                target = v;
                break;
            }
        }
        if (target == -1) break;
        bool found_wrong = false;
        for (int sample = 0; sample < cap && diff[target] > two_beta; ++sample) {
            const std::vector<Vertex> options_now = disagreeing(target);
            const Vertex u = rng.pick(options_now);
            const bool predicted = predictor.predicts_less(u, target);
            const Relation r = learn(view, known, u, target);
            ++st.global_queries;
            if ((r == Relation::Less) != predicted) {
                found_wrong = true;
                repredict();
                refresh_all();
                break;
            }
            diff[target] = static_cast<int>(disagreeing(target).size());
            diff[u] = static_cast<int>(disagreeing(u).size());
        }
        if (!found_wrong && diff[target] > two_beta) {
            ++st.cap_hits;
            exhausted[target] = 1;
        }
    }

    st.predictor_queries += view.report().query_count - start;
    if (options.audit) {
        const auto wrong = predictor.wrong_counts(*options.audit);
        int worst = 0;
        for (Vertex v : view.vertices()) worst = std::max(worst, wrong[v]);
        st.predictor_wrong_max = worst;
    }
    return predictor;
}

Poset gpsc_sort_with(const OracleView& view, const Predictor& predictor, Poset known, const GpscOptions& options,
                     GpscStats* stats) {
    GpscStats local_stats;
    GpscStats& st = stats ? *stats : local_stats;
    const int universe = view.universe();
    const auto& verts = view.vertices();

    std::vector<std::vector<Vertex>> in_pred(universe), out_pred(universe);
    for (Vertex u : verts) {
        in_pred[u] = predictor.predicted_in(u);
        for (Vertex w : in_pred[u]) out_pred[w].push_back(u);
    }

    int true_width = 0;
    if (options.audit) {
        true_width = static_cast<int>(
            gps::min_chain_cover(verts, [&](Vertex a, Vertex b) { return options.audit->less(a, b); }).size());
    }

    std::vector<char> sorted(universe, 0);
    BitSet sorted_mask(universe);
    std::vector<int> cover(universe, 0);
    std::vector<char> dirty(universe, 1);
    auto sorted_relations = [&] {
        std::size_t c = 0;
        sorted_mask.for_each([&](int a) { c += known.up(a).count_and(sorted_mask); });
        return c;
    };

    for (std::size_t step = 0; step < verts.size(); ++step) {
        Vertex best = -1;
        for (Vertex u : verts) {
            if (sorted[u]) continue;
            if (dirty[u]) {
                cover[u] = static_cast<int>(min_chain_cover(in_pred[u], known, sorted).size());
                dirty[u] = 0;
            }
            if (best == -1 || cover[u] < cover[best] ||
                (cover[u] == cover[best] && in_pred[u].size() < in_pred[best].size()) ||
                (cover[u] == cover[best] && in_pred[u].size() == in_pred[best].size() && u < best))
                best = u;
        }
        st.max_cover = std::max(st.max_cover, cover[best]);

        if (options.audit) {
            int bound = -1;
            for (Vertex u : verts) {
                if (sorted[u]) continue;
                bool minimal = true;
                options.audit->down(u).for_each([&](int w) {
                    if (view.contains(w) && !sorted[w]) minimal = false;
                });
                if (!minimal) continue;
                int wrong = 0;
                for (Vertex w : in_pred[u])
                    if (options.audit->less(u, w)) ++wrong;
                const int b = true_width + wrong;
                if (bound == -1 || b < bound) bound = b;
            }
            if (bound != -1 && cover[best] > bound) ++st.existence_violations;
        }

        const auto before = view.report().query_count;
        const std::size_t relations_before = sorted_relations();
        const Vertex u = best;
        for (const Chain& chain : min_chain_cover(in_pred[u], known, sorted)) {
            auto ask = [&](Vertex x) {
                if (known.less(x, u)) return Relation::Less;
                if (known.less(u, x)) return Relation::Greater;
                return learn(view, known, x, u);
            };
            std::size_t lo = 0, hi = chain.size();
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (ask(chain[mid]) == Relation::Less)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo > 0) known.add_less(chain[lo - 1], u);
        }
        const bool sorted_changed = sorted_relations() != relations_before;
        sorted[u] = 1;
        sorted_mask.set(u);
        st.insert_queries.push_back(view.report().query_count - before);
        if (sorted_changed) {
            std::fill(dirty.begin(), dirty.end(), 1);
        } else {
            for (Vertex w : out_pred[u]) dirty[w] = 1;
        }
    }
    return known;
}

Poset gpsc_sort(const OracleView& view, Rng& rng, const GpscOptions& options, GpscStats* stats) {
    Poset known(view.universe());
    Predictor predictor = build_predictor(view, known, rng, options, stats);
    return gpsc_sort_with(view, predictor, std::move(known), options, stats);
}

}  // namespace gps
