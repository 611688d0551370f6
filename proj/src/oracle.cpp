#include "gps/oracle.hpp"

#include <algorithm>
#include <string>

#include "gps/errors.hpp"

namespace gps {

QueryGraph::QueryGraph(int n, std::vector<std::pair<Vertex, Vertex>> edges,
                       std::vector<double> weights, Poset truth)
    : n_(n), edges_(std::move(edges)), weights_(std::move(weights)), truth_(std::move(truth)) {
    if (n < 0) throw MalformedInput("negative vertex count");
    if (truth_.size() != n) throw MalformedInput("hidden order has the wrong size");
    if (weights_.empty()) weights_.assign(edges_.size(), 1.0);
    if (weights_.size() != edges_.size()) throw MalformedInput("weight count differs from edge count");
    ids_.assign(static_cast<std::size_t>(n) * n, -1);
    adj_.assign(n, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto [u, v] = edges_[i];
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw MalformedInput("bad edge " + std::to_string(u) + "-" + std::to_string(v));
        if (ids_[static_cast<std::size_t>(u) * n + v] != -1)
            throw MalformedInput("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        if (weights_[i] < 0) throw MalformedInput("negative weight");
        ids_[static_cast<std::size_t>(u) * n + v] = static_cast<int>(i);
        ids_[static_cast<std::size_t>(v) * n + u] = static_cast<int>(i);
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());
}

double QueryGraph::weight(Vertex u, Vertex v) const {
    const int id = edge_id(u, v);
    if (id < 0) throw NotAnEdge(std::to_string(u) + "-" + std::to_string(v));
    return weights_[id];
}

bool QueryGraph::closure_matches_truth() const {
    Dag oriented{n_, {}};
    for (const auto& [u, v] : edges_) {
        switch (truth_.relation(u, v)) {
            case Relation::Less: oriented.edges.emplace_back(u, v); break;
            case Relation::Greater: oriented.edges.emplace_back(v, u); break;
            default: break;
        }
    }
    return transitive_closure(oriented) == truth_;
}

bool QueryGraph::is_complete() const {
    return edges_.size() == static_cast<std::size_t>(n_) * (n_ - 1) / 2 || n_ < 2;
}

OracleSession::OracleSession(const QueryGraph& graph, double budget)
    : graph_(&graph), answered_(graph.edge_count(), 0), budget_(budget) {}

Relation OracleSession::query(Vertex u, Vertex v) {
    const int id = graph_->edge_id(u, v);
    if (id < 0) throw NotAnEdge(std::to_string(u) + "-" + std::to_string(v));
    if (!answered_[id]) {
        const double w = graph_->weights()[id];
        if (cost_ + w > budget_) throw BudgetExceeded("query " + std::to_string(u) + "-" + std::to_string(v));
        answered_[id] = 1;
        ++query_count_;
        cost_ += w;
        if (logging_) log_.emplace_back(u, v);
    }
    return graph_->truth().relation(u, v);
}

bool OracleSession::answered(Vertex u, Vertex v) const {
    const int id = graph_->edge_id(u, v);
    return id >= 0 && answered_[id];
}

OracleView::OracleView(OracleSession& session) : session_(&session) {
    const int n = session.graph().size();
    auto verts = std::make_shared<std::vector<Vertex>>(n);
    for (Vertex v = 0; v < n; ++v) (*verts)[v] = v;
    vertices_ = std::move(verts);
    member_ = std::make_shared<std::vector<char>>(n, 1);
}

bool OracleView::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= universe() || v >= universe()) return false;
    if (!contains(u) || !contains(v)) return false;
    const auto& g = session_->graph();
    const int id = g.edge_id(u, v);
    return id >= 0 && g.weights()[id] <= max_weight_;
}

std::vector<Vertex> OracleView::neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for_each_neighbor(v, [&](Vertex u) { out.push_back(u); });
    return out;
}

Relation OracleView::query(Vertex u, Vertex v) const {
    if (!has_edge(u, v)) throw NotAnEdge(std::to_string(u) + "-" + std::to_string(v) + " outside view");
    const Relation r = session_->query(u, v);
    return reversed_ ? flip(r) : r;
}

OracleView OracleView::induced(const std::vector<Vertex>& subset) const {
    OracleView view = *this;
    auto member = std::make_shared<std::vector<char>>(universe(), 0);
    for (Vertex v : subset) {
        if (v < 0 || v >= universe() || !contains(v))
            throw InvalidParams("vertex " + std::to_string(v) + " not in view");
        (*member)[v] = 1;
    }
    view.vertices_ = std::make_shared<std::vector<Vertex>>(subset);
    view.member_ = std::move(member);
    return view;
}

OracleView OracleView::flipped() const {
    OracleView view = *this;
    view.reversed_ = !reversed_;
    return view;
}

OracleView OracleView::weight_capped(double max_weight) const {
    OracleView view = *this;
    view.max_weight_ = std::min(max_weight_, max_weight);
    return view;
}

}  // namespace gps
