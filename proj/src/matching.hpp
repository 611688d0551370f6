#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace gps::detail {

/// Hopcroft-Karp on a bipartite graph with equal-size sides 0..n-1.
class BipartiteMatching {
public:
    explicit BipartiteMatching(int n) : n_(n), adj_(n), match_left_(n, -1), match_right_(n, -1) {}

    void add_edge(int left, int right) { adj_[left].push_back(right); }

    int solve() {
        int size = 0;
        while (bfs()) {
            for (int u = 0; u < n_; ++u)
                if (match_left_[u] == -1 && dfs(u)) ++size;
        }
        return size;
    }

    int match_left(int u) const { return match_left_[u]; }
    int match_right(int v) const { return match_right_[v]; }

    /// Left/right vertices reachable by alternating paths from free left
    /// vertices. Call after solve().
    void alternating_reach(std::vector<char>& left_seen, std::vector<char>& right_seen) const {
        left_seen.assign(n_, 0);
        right_seen.assign(n_, 0);
        std::vector<int> stack;
        for (int u = 0; u < n_; ++u) {
            if (match_left_[u] == -1) {
                left_seen[u] = 1;
                stack.push_back(u);
            }
        }
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : adj_[u]) {
                if (right_seen[v] || match_left_[u] == v) continue;
                right_seen[v] = 1;
                const int w = match_right_[v];
                if (w != -1 && !left_seen[w]) {
                    left_seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }

private:
    static constexpr int kInf = std::numeric_limits<int>::max();

    bool bfs() {
        dist_.assign(n_, kInf);
        std::queue<int> q;
        for (int u = 0; u < n_; ++u) {
            if (match_left_[u] == -1) {
                dist_[u] = 0;
                q.push(u);
            }
        }
        bool found = false;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj_[u]) {
                const int w = match_right_[v];
                if (w == -1) {
                    found = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj_[u]) {
            const int w = match_right_[v];
            if (w == -1 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
};

}  // namespace gps::detail
