#include "unictrl/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace unictrl {
namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
    const BipartiteGraph& g;
    std::vector<int> match_left;   // per left vertex: right partner or -1
    std::vector<int> match_right;  // per right vertex: left partner or -1
    std::vector<int> dist;

    explicit HopcroftKarp(const BipartiteGraph& graph)
        : g(graph), match_left(graph.left_count, -1), match_right(graph.right_count, -1),
          dist(graph.left_count, kInf) {}

    bool bfs() {
        std::queue<int> q;
        bool reachable_free = false;
        for (int u = 0; u < g.left_count; ++u) {
            if (match_left[u] < 0) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : g.adj[u]) {
                const int w = match_right[v];
                if (w < 0) {
                    reachable_free = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int v : g.adj[u]) {
            const int w = match_right[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_left[u] = v;
                match_right[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    }

    void run() {
        while (bfs())
            for (int u = 0; u < g.left_count; ++u)
                if (match_left[u] < 0) dfs(u);
    }
};

std::vector<std::pair<int, int>> collect(const HopcroftKarp& hk) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < hk.g.left_count; ++u)
        if (hk.match_left[u] >= 0) pairs.emplace_back(u, hk.match_left[u]);
    return pairs;
}

}  // namespace

std::vector<std::pair<int, int>> hopcroft_karp(const BipartiteGraph& g) {
    HopcroftKarp hk(g);
    hk.run();
    return collect(hk);
}

std::vector<std::pair<int, int>> hopcroft_karp_from(const BipartiteGraph& g,
                                                    std::vector<int> matched_right) {
    HopcroftKarp hk(g);
    for (int v = 0; v < g.right_count; ++v) {
        const int u = matched_right[v];
        if (u >= 0) {
            hk.match_right[v] = u;
            hk.match_left[u] = v;
        }
    }
    hk.run();
    return collect(hk);
}

BipartiteGraph lineality_graph(const Matrix& W, int n, double tau_zero) {
    BipartiteGraph g;
    g.left_count = static_cast<int>(W.cols());
    g.right_count = n;
    g.adj.resize(g.left_count);
    for (int j = 0; j < g.left_count; ++j)
        for (int i = 0; i < n; ++i)
            if (std::abs(W(i, j)) > tau_zero) g.adj[j].push_back(i);
    return g;
}

LinealityMatching subset_from_lineality(const Matrix& W, int n, double tau_zero,
                                        const std::vector<int>& prefer_avoid) {
    LinealityMatching out;
    out.nodes = NodeSubset({}, n);
    if (W.cols() == 0) return out;

    BipartiteGraph g = lineality_graph(W, n, tau_zero);

    std::vector<int> match_right(n, -1);
    if (!prefer_avoid.empty()) {
        // phase 1: maximize while the avoided nodes are absent entirely
        std::vector<bool> avoid(n, false);
        for (int node : prefer_avoid)
            if (node >= 1 && node <= n) avoid[node - 1] = true;
        BipartiteGraph pruned = g;
        for (auto& lst : pruned.adj) {
            std::vector<int> kept;
            for (int v : lst)
                if (!avoid[v]) kept.push_back(v);
            lst = std::move(kept);
        }
        for (auto [u, v] : hopcroft_karp(pruned)) match_right[v] = u;
    }
    // phase 2 (or the whole run): augment to maximum on the full graph
    auto pairs = hopcroft_karp_from(g, std::move(match_right));

    for (auto [u, v] : pairs) {
        out.pairs.emplace_back(u, v + 1);
        out.nodes.insert(v + 1);
    }
    out.saturated = static_cast<int>(pairs.size()) == g.left_count;
    return out;
}

}  // namespace unictrl
