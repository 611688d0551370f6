#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "gps/oracle.hpp"
#include "gps/poset.hpp"

namespace gps {

enum class Model { Er, Bipartite, Gpsc, Weighted };

const char* to_string(Model m);
/// Throws InvalidParams on an unknown name.
Model parse_model(const std::string& name);

enum class GapProfile { UniformLog, Separated };

const char* to_string(GapProfile g);
GapProfile parse_gap_profile(const std::string& name);

struct Instance {
    Model model = Model::Er;
    QueryGraph graph;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;

    int size() const { return graph.size(); }
    /// Width of the hidden order.
    int width() const;
    /// Bipartite instances: vertices below this index form side A.
    int side_a() const;
};

/// Poset of exact width k on n vertices: k random chains plus sparse cross
/// relations, resampled until the width is exactly k.
/// Throws Unsatisfiable if k > n and InvalidParams if k < 1.
Poset random_poset(int n, int k, std::uint64_t seed);

/// Reduction edges of `poset` plus every other pair independently with
/// probability p.
QueryGraph er_query_graph(const Poset& poset, double p, std::uint64_t seed);

Instance er_instance(int n, int k, double p, std::uint64_t seed);

/// Complete bipartite query graph between A = [0, nA) and B = [nA, nA + nB).
/// A random `density` fraction of cross pairs is related, oriented along a
/// random global order.
Instance bipartite_instance(int n_a, int n_b, double density, std::uint64_t seed);

/// Split each v into v_L = v < v_R = n + v with u_L < v_R and u_R < v_L for
/// every u < v. The result is bipartite between L and R, and u < v iff
/// u_L < v_L.
Instance bipartite_reduction(const Poset& poset, std::uint64_t seed = 0);

/// Every edge joins comparable vertices: reduction edges plus each other
/// comparable pair with probability extra_edge_prob.
Instance gpsc_instance(int n, int k, double extra_edge_prob, std::uint64_t seed);

/// Total order with the Hamiltonian path always present, extra pairs with
/// probability extra_edge_prob, and W distinct weight levels.
Instance weighted_instance(int n, int levels, std::uint64_t seed,
                           GapProfile profile = GapProfile::UniformLog,
                           double extra_edge_prob = 0.25);

/// Sum of weights along consecutive elements of the hidden total order.
double optimal_cost(const Instance& instance);

/// Distinct edge weights in increasing order.
std::vector<double> weight_levels(const QueryGraph& graph);

nlohmann::json to_json(const Instance& instance);
/// Throws MalformedInput, including when the closure property fails.
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace gps
