#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "gps/poset.hpp"

namespace gps {

/// Undirected query graph with edge weights and the hidden order.
class QueryGraph {
public:
    QueryGraph() = default;
    /// Weights default to 1. Throws MalformedInput on bad edges.
    QueryGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges, std::vector<double> weights,
               Poset truth);

    int size() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    const std::vector<double>& weights() const { return weights_; }

    /// -1 when {u, v} is not an edge.
    int edge_id(Vertex u, Vertex v) const {
        return u == v ? -1 : ids_[static_cast<std::size_t>(u) * n_ + v];
    }
    bool has_edge(Vertex u, Vertex v) const { return edge_id(u, v) >= 0; }
    double weight(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

    const Poset& truth() const { return truth_; }

    /// True when the closure of the oriented edges equals the hidden order.
    bool closure_matches_truth() const;

    /// Whether every pair of distinct vertices is an edge.
    bool is_complete() const;

private:
    int n_ = 0;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<double> weights_;
    std::vector<int> ids_;
    std::vector<std::vector<Vertex>> adj_;
    Poset truth_;
};

struct QueryReport {
    std::int64_t query_count = 0;
    double cost = 0.0;
};

/// Metered access to the hidden order. Repeated queries of an edge are served
/// from cache and not charged again.
class OracleSession {
public:
    explicit OracleSession(const QueryGraph& graph,
                           double budget = std::numeric_limits<double>::infinity());

    const QueryGraph& graph() const { return *graph_; }

    /// Relation of u to v. Throws NotAnEdge or BudgetExceeded.
    Relation query(Vertex u, Vertex v);
    bool answered(Vertex u, Vertex v) const;

    QueryReport report() const { return {query_count_, cost_}; }
    void set_budget(double budget) { budget_ = budget; }
    double budget() const { return budget_; }

    /// Optional record of charged queries as (u, v) pairs in query order.
    void enable_log() { logging_ = true; }
    const std::vector<std::pair<Vertex, Vertex>>& log() const { return log_; }

private:
    const QueryGraph* graph_;
    std::vector<char> answered_;
    std::int64_t query_count_ = 0;
    double cost_ = 0.0;
    double budget_;
    bool logging_ = false;
    std::vector<std::pair<Vertex, Vertex>> log_;
};

/// Restriction of a session to a vertex subset, optionally to edges of weight
/// at most a cap and optionally with every answer reversed. All views charge
/// the underlying session.
class OracleView {
public:
    explicit OracleView(OracleSession& session);

    OracleSession& session() const { return *session_; }
    int universe() const { return session_->graph().size(); }
    const std::vector<Vertex>& vertices() const { return *vertices_; }
    int size() const { return static_cast<int>(vertices_->size()); }
    bool contains(Vertex v) const { return (*member_)[v] != 0; }
    bool reversed() const { return reversed_; }

    bool has_edge(Vertex u, Vertex v) const;
    double weight(Vertex u, Vertex v) const { return session_->graph().weight(u, v); }
    std::vector<Vertex> neighbors(Vertex v) const;

    template <class F>
    void for_each_neighbor(Vertex v, F&& f) const {
        const auto& g = session_->graph();
        for (Vertex u : g.neighbors(v))
            if (contains(u) && g.weight(u, v) <= max_weight_) f(u);
    }

    /// Throws NotAnEdge when {u, v} is not an edge of the view.
    Relation query(Vertex u, Vertex v) const;

    /// Sub-view on `subset`, which must lie inside this view.
    OracleView induced(const std::vector<Vertex>& subset) const;
    OracleView flipped() const;
    OracleView weight_capped(double max_weight) const;

    QueryReport report() const { return session_->report(); }

private:
    OracleSession* session_;
    std::shared_ptr<const std::vector<Vertex>> vertices_;
    std::shared_ptr<const std::vector<char>> member_;
    bool reversed_ = false;
    double max_weight_ = std::numeric_limits<double>::infinity();
};

}  // namespace gps
