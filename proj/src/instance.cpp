#include "gps/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gps/errors.hpp"
#include "gps/rng.hpp"

namespace gps {

const char* to_string(Model m) {
    switch (m) {
        case Model::Er: return "er";
        case Model::Bipartite: return "bipartite";
        case Model::Gpsc: return "gpsc";
        case Model::Weighted: return "weighted";
    }
    return "?";
}

Model parse_model(const std::string& name) {
    if (name == "er") return Model::Er;
    if (name == "bipartite") return Model::Bipartite;
    if (name == "gpsc") return Model::Gpsc;
    if (name == "weighted") return Model::Weighted;
    throw InvalidParams("unknown model '" + name + "'");
}

const char* to_string(GapProfile g) {
    return g == GapProfile::Separated ? "separated" : "uniform-log";
}

GapProfile parse_gap_profile(const std::string& name) {
    if (name == "uniform-log") return GapProfile::UniformLog;
    if (name == "separated") return GapProfile::Separated;
    throw InvalidParams("unknown gap profile '" + name + "'");
}

int Instance::width() const {
    if (params.contains("k") && params["k"].is_number_integer()) return params["k"].get<int>();
    return gps::width(graph.truth());
}

int Instance::side_a() const {
    if (params.contains("nA")) return params["nA"].get<int>();
    return 0;
}

namespace {

// Independent streams for the pieces of one instance.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t part) { return derive_seed(seed, part); }

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParams(std::string(name) + " must lie in [0, 1]");
}

std::vector<char> reduction_mask(const Poset& poset) {
    const int n = poset.size();
    std::vector<char> mask(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [u, v] : poset.reduction().edges) {
        mask[static_cast<std::size_t>(u) * n + v] = 1;
        mask[static_cast<std::size_t>(v) * n + u] = 1;
    }
    return mask;
}

}  // namespace

Poset random_poset(int n, int k, std::uint64_t seed) {
    if (k < 1) throw InvalidParams("width must be at least 1");
    if (k > n) throw Unsatisfiable("width " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    Rng rng(seed);

    std::vector<Vertex> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i;
    rng.shuffle(labels);

    std::vector<int> cuts(n - 1);
    for (int i = 0; i < n - 1; ++i) cuts[i] = i + 1;
    rng.shuffle(cuts);
    cuts.resize(k - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);

    std::vector<Chain> chains;
    std::vector<int> chain_of(n);
    int start = 0;
    for (int cut : cuts) {
        Chain c(labels.begin() + start, labels.begin() + cut);
        for (Vertex v : c) chain_of[v] = static_cast<int>(chains.size());
        chains.push_back(std::move(c));
        start = cut;
    }

    // Random interleaving of the chains gives a global order for cross pairs.
    std::vector<int> slots;
    for (int c = 0; c < k; ++c) slots.insert(slots.end(), chains[c].size(), c);
    rng.shuffle(slots);
    std::vector<std::size_t> next(k, 0);
    std::vector<Vertex> sigma;
    sigma.reserve(n);
    for (int c : slots) sigma.push_back(chains[c][next[c]++]);

    double q = std::min(1.0, 4.0 / n);
    for (int attempt = 0;; ++attempt) {
        Poset poset(n);
        for (const Chain& c : chains)
            for (std::size_t i = 1; i < c.size(); ++i) poset.add_less(c[i - 1], c[i]);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (chain_of[sigma[i]] == chain_of[sigma[j]]) continue;
                if (rng.bernoulli(q)) poset.add_less(sigma[i], sigma[j]);
            }
        }
        if (gps::width(poset) == k) return poset;
        q = attempt >= 40 ? 0.0 : q / 2;
    }
}

QueryGraph er_query_graph(const Poset& poset, double p, std::uint64_t seed) {
    check_probability(p, "p");
    const int n = poset.size();
    Rng rng(seed);
    const auto mask = reduction_mask(poset);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const bool coin = rng.bernoulli(p);
            if (coin || mask[static_cast<std::size_t>(u) * n + v]) edges.emplace_back(u, v);
        }
    }
    return QueryGraph(n, std::move(edges), {}, poset);
}

Instance er_instance(int n, int k, double p, std::uint64_t seed) {
    check_probability(p, "p");
    Poset poset = random_poset(n, k, sub_seed(seed, 1));
    Instance inst;
    inst.model = Model::Er;
    inst.graph = er_query_graph(poset, p, sub_seed(seed, 2));
    inst.params = {{"n", n}, {"k", k}, {"p", p}};
    inst.seed = seed;
    return inst;
}

Instance bipartite_instance(int n_a, int n_b, double density, std::uint64_t seed) {
    if (n_a < 1 || n_b < 1) throw InvalidParams("both sides need at least one vertex");
    check_probability(density, "density");
    const int n = n_a + n_b;
    Rng rng(seed);
    std::vector<Vertex> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    rng.shuffle(sigma);
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[sigma[i]] = i;

    Dag relations{n, {}};
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < n_a; ++a) {
        for (Vertex b = n_a; b < n; ++b) {
            edges.emplace_back(a, b);
            if (!rng.bernoulli(density)) continue;
            if (rank[a] < rank[b])
                relations.edges.emplace_back(a, b);
            else
                relations.edges.emplace_back(b, a);
        }
    }
    Poset truth = transitive_closure(relations);
    Instance inst;
    inst.model = Model::Bipartite;
    const int k = gps::width(truth);
    inst.graph = QueryGraph(n, std::move(edges), {}, std::move(truth));
    inst.params = {{"nA", n_a}, {"nB", n_b}, {"density", density}, {"k", k}};
    inst.seed = seed;
    return inst;
}

Instance bipartite_reduction(const Poset& poset, std::uint64_t seed) {
    const int n = poset.size();
    Dag relations{2 * n, {}};
    for (Vertex v = 0; v < n; ++v) {
        relations.edges.emplace_back(v, n + v);
        poset.up(v).for_each([&](int w) {
            relations.edges.emplace_back(v, n + w);
            relations.edges.emplace_back(n + v, w);
        });
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = n; b < 2 * n; ++b) edges.emplace_back(a, b);
    Poset truth = transitive_closure(relations);
    Instance inst;
    inst.model = Model::Bipartite;
    const int k = gps::width(truth);
    inst.graph = QueryGraph(2 * n, std::move(edges), {}, std::move(truth));
    inst.params = {{"nA", n}, {"nB", n}, {"k", k}, {"split_of", n}};
    inst.seed = seed;
    return inst;
}

Instance gpsc_instance(int n, int k, double extra_edge_prob, std::uint64_t seed) {
    check_probability(extra_edge_prob, "extra_edge_prob");
    Poset poset = random_poset(n, k, sub_seed(seed, 1));
    Rng rng(sub_seed(seed, 2));
    const auto mask = reduction_mask(poset);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const bool coin = rng.bernoulli(extra_edge_prob);
            if (mask[static_cast<std::size_t>(u) * n + v] || (coin && poset.comparable(u, v)))
                edges.emplace_back(u, v);
        }
    }
    Instance inst;
    inst.model = Model::Gpsc;
    inst.graph = QueryGraph(n, std::move(edges), {}, std::move(poset));
    inst.params = {{"n", n}, {"k", k}, {"extra_edge_prob", extra_edge_prob}};
    inst.seed = seed;
    return inst;
}

Instance weighted_instance(int n, int levels, std::uint64_t seed, GapProfile profile,
                           double extra_edge_prob) {
    if (n < 2) throw InvalidParams("weighted instances need n >= 2");
    if (levels < 1) throw InvalidParams("W must be at least 1");
    if (levels > n - 1) throw InvalidParams("W exceeds the number of path edges");
    check_probability(extra_edge_prob, "extra_edge_prob");
    Rng rng(seed);
    std::vector<Vertex> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    const double ratio =
        profile == GapProfile::Separated ? std::ceil(std::pow(static_cast<double>(n), 0.75)) : 4.0;
    std::vector<double> values(levels);
    for (int i = 0; i < levels; ++i) values[i] = std::pow(ratio, i);

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const bool coin = rng.bernoulli(extra_edge_prob);
            if (coin || std::abs(rank[u] - rank[v]) == 1) edges.emplace_back(u, v);
        }
    }
    // Every level appears at least once.
    std::vector<std::size_t> slot(edges.size());
    for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = i;
    rng.shuffle(slot);
    std::vector<double> weights(edges.size());
    for (std::size_t i = 0; i < slot.size(); ++i)
        weights[slot[i]] = i < static_cast<std::size_t>(levels) ? values[i] : values[rng.below(levels)];

    Poset truth(n);
    for (int i = 1; i < n; ++i) truth.add_less(order[i - 1], order[i]);
    Instance inst;
    inst.model = Model::Weighted;
    inst.graph = QueryGraph(n, std::move(edges), std::move(weights), std::move(truth));
    inst.params = {{"n", n},
                   {"k", 1},
                   {"W", levels},
                   {"gap_profile", to_string(profile)},
                   {"extra_edge_prob", extra_edge_prob}};
    inst.seed = seed;
    return inst;
}

double optimal_cost(const Instance& instance) {
    const auto& g = instance.graph;
    const int n = g.size();
    std::vector<Vertex> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return g.truth().down(a).count() < g.truth().down(b).count();
    });
    double total = 0.0;
    for (int i = 1; i < n; ++i) total += g.weight(order[i - 1], order[i]);
    return total;
}

std::vector<double> weight_levels(const QueryGraph& graph) {
    std::vector<double> w = graph.weights();
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
}

nlohmann::json to_json(const Instance& instance) {
    const auto& g = instance.graph;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    nlohmann::json reduction = nlohmann::json::array();
    for (const auto& [u, v] : g.truth().reduction().edges) reduction.push_back({u, v});
    nlohmann::json j = {{"n", g.size()},
                        {"edges", std::move(edges)},
                        {"truth_reduction", std::move(reduction)},
                        {"model", to_string(instance.model)},
                        {"params", instance.params},
                        {"seed", instance.seed}};
    if (instance.model == Model::Weighted) j["weights"] = g.weights();
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    Instance inst;
    try {
        const int n = j.at("n").get<int>();
        auto read_pairs = [](const nlohmann::json& arr) {
            std::vector<std::pair<Vertex, Vertex>> out;
            for (const auto& e : arr) {
                if (!e.is_array() || e.size() != 2) throw MalformedInput("edge must be a pair");
                out.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
            return out;
        };
        auto edges = read_pairs(j.at("edges"));
        Dag reduction{n, read_pairs(j.at("truth_reduction"))};
        std::vector<double> weights;
        if (j.contains("weights")) weights = j["weights"].get<std::vector<double>>();
        inst.model = parse_model(j.at("model").get<std::string>());
        inst.params = j.value("params", nlohmann::json::object());
        inst.seed = j.value("seed", std::uint64_t{0});
        Poset truth = transitive_closure(reduction);
        inst.graph = QueryGraph(n, std::move(edges), std::move(weights), std::move(truth));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(e.what());
    } catch (const CyclicInput& e) {
        throw MalformedInput(e.what());
    } catch (const InvalidParams& e) {
        throw MalformedInput(e.what());
    }
    if (!inst.graph.closure_matches_truth())
        throw MalformedInput("closure of the oriented edges differs from the hidden order");
    return inst;
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParams("cannot write " + path);
    out << to_json(instance).dump() << '\n';
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParams("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(e.what());
    }
    return instance_from_json(j);
}

}  // namespace gps
