// Undirected simple graphs: parsing, random regular generation, BFS
// neighborhoods, independence checks, and a small exact MIS solver used as a
// test-scale oracle.
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qls/random.hpp"

namespace qls {

// Nodes are dense ids 0..n-1. Adjacency lists are sorted ascending, symmetric,
// with no self-loops and no duplicate edges.
class Graph {
public:
    Graph() = default;

    // Edges may repeat; duplicates collapse. Self-loops and out-of-range ids
    // are rejected.
    Graph(int n, std::span<const std::pair<int, int>> edges) : n_(n), adjacency_(n) {
        if (n < 0) {
            throw std::invalid_argument("graph: node count must be nonnegative");
        }
        for (const auto& [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n) {
                throw std::invalid_argument("graph: edge endpoint out of range");
            }
            if (u == v) {
                throw std::invalid_argument("graph: self-loop " + std::to_string(u));
            }
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    }

    int node_count() const { return n_; }

    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }

    bool has_edge(int u, int v) const {
        const auto& list = adjacency_[u];
        return std::binary_search(list.begin(), list.end(), v);
    }

    int edge_count() const {
        std::size_t twice = 0;
        for (const auto& list : adjacency_) {
            twice += list.size();
        }
        return static_cast<int>(twice / 2);
    }

    // All edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u) {
            for (int v : adjacency_[u]) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

private:
    int n_ = 0;
    std::vector<std::vector<int>> adjacency_;
};

// BFS ball of a fixed hop radius around a root node. Nodes are listed in BFS
// order from the root, ties within a layer broken by ascending global id.
// interior_mask[i] is true iff every graph neighbor of nodes[i] is itself in
// the ball; only such nodes may receive partial mixers.
struct Neighborhood {
    int root = 0;
    int radius = 0;
    std::vector<int> nodes;                       // global ids, BFS order
    std::vector<std::pair<int, int>> local_edges; // induced edges, local indices, first < second
    std::vector<bool> interior_mask;
    std::vector<std::vector<int>> local_adj;      // induced adjacency in local indices

    int size() const { return static_cast<int>(nodes.size()); }

    // Local index of a global id, or -1 if the node is outside the ball.
    int local_of(int global_id) const {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i] == global_id) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }
};

// Parses an edge-list document: one edge per line "u v", lines starting with
// '#' and blank lines ignored. Node count is max id + 1; id gaps become
// isolated nodes.
inline Graph from_edge_list(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        long long u = 0;
        long long v = 0;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra)) {
            throw std::invalid_argument("edge list: malformed line " + std::to_string(line_no) +
                                        ": \"" + line + "\"");
        }
        if (u < 0 || v < 0) {
            throw std::invalid_argument("edge list: negative node id on line " +
                                        std::to_string(line_no));
        }
        if (u == v) {
            throw std::invalid_argument("edge list: self-loop on line " + std::to_string(line_no) +
                                        ": \"" + line + "\"");
        }
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    return Graph(max_id + 1, edges);
}

// Uniform-ish random d-regular simple graph via the pairing (configuration)
// model: pair up node stubs at random and reject any realization with a
// self-loop or multi-edge. Deterministic for a fixed engine state.
inline Graph random_regular(int n, int d, Rng& rng) {
    if (n < 0 || d < 0 || d >= std::max(n, 1)) {
        throw std::invalid_argument("random_regular: need 0 <= d < n");
    }
    if ((static_cast<long long>(n) * d) % 2 != 0) {
        throw std::invalid_argument("random_regular: n*d must be even");
    }
    if (d == 0) {
        return Graph(n, {});
    }
    constexpr int kMaxAttempts = 1000;
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        stubs.clear();
        for (int v = 0; v < n; ++v) {
            for (int i = 0; i < d; ++i) {
                stubs.push_back(v);
            }
        }
        shuffle(stubs, rng);
        std::vector<std::pair<int, int>> edges;
        edges.reserve(stubs.size() / 2);
        std::vector<std::vector<int>> seen(n);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i];
            int v = stubs[i + 1];
            if (u == v) {
                ok = false;
                break;
            }
            if (u > v) {
                std::swap(u, v);
            }
            auto& row = seen[u];
            if (std::find(row.begin(), row.end(), v) != row.end()) {
                ok = false;
                break;
            }
            row.push_back(v);
            edges.emplace_back(u, v);
        }
        if (ok) {
            return Graph(n, edges);
        }
    }
    throw std::runtime_error("random_regular: no simple realization found in 1000 attempts");
}

// BFS ball of the given hop radius. interior_mask is computed against the
// full graph, not the induced subgraph.
inline Neighborhood ball(const Graph& g, int root, int radius) {
    if (root < 0 || root >= g.node_count()) {
        throw std::invalid_argument("ball: root out of range");
    }
    if (radius < 0) {
        throw std::invalid_argument("ball: radius must be nonnegative");
    }
    Neighborhood nb;
    nb.root = root;
    nb.radius = radius;

    std::vector<int> dist(g.node_count(), -1);
    dist[root] = 0;
    nb.nodes.push_back(root);
    std::vector<int> frontier{root};
    for (int layer = 1; layer <= radius && !frontier.empty(); ++layer) {
        std::vector<int> next;
        for (int u : frontier) {
            for (int v : g.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = layer;
                    next.push_back(v);
                }
            }
        }
        std::sort(next.begin(), next.end());
        nb.nodes.insert(nb.nodes.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    const int m = nb.size();
    std::vector<int> local(g.node_count(), -1);
    for (int i = 0; i < m; ++i) {
        local[nb.nodes[i]] = i;
    }
    nb.interior_mask.resize(m);
    nb.local_adj.resize(m);
    for (int i = 0; i < m; ++i) {
        bool interior = true;
        for (int v : g.neighbors(nb.nodes[i])) {
            const int j = local[v];
            if (j < 0) {
                interior = false;
                continue;
            }
            nb.local_adj[i].push_back(j);
            if (i < j) {
                nb.local_edges.emplace_back(i, j);
            }
        }
        nb.interior_mask[i] = interior;
        std::sort(nb.local_adj[i].begin(), nb.local_adj[i].end());
    }
    std::sort(nb.local_edges.begin(), nb.local_edges.end());
    return nb;
}

// True iff no edge of g has both endpoints in s.
inline bool is_independent_set(const Graph& g, std::span<const int> s) {
    std::vector<char> member(g.node_count(), 0);
    for (int v : s) {
        if (v < 0 || v >= g.node_count()) {
            throw std::invalid_argument("is_independent_set: node id out of range");
        }
        member[v] = 1;
    }
    for (int v : s) {
        for (int w : g.neighbors(v)) {
            if (member[w]) {
                return false;
            }
        }
    }
    return true;
}

inline constexpr int kExactMisCap = 24;

// Exact maximum independent set by include-first branch and bound over node
// order 0..n-1. Pruning only discards subtrees that cannot strictly beat the
// incumbent, so the first optimum found -- and hence the returned set -- is
// the lexicographically smallest optimal set.
inline std::vector<int> exact_mis(const Graph& g) {
    const int n = g.node_count();
    if (n > kExactMisCap) {
        throw std::runtime_error("exact_mis: graph exceeds the 24-node cap");
    }
    std::vector<std::uint32_t> adj_mask(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int v : g.neighbors(u)) {
            adj_mask[u] |= 1u << v;
        }
    }
    std::uint32_t best_mask = 0;
    int best_size = -1;

    // chosen_mask holds the current set; blocked_mask its neighbors.
    auto recurse = [&](auto&& self, int v, std::uint32_t chosen_mask, std::uint32_t blocked_mask,
                       int chosen_size) -> void {
        if (chosen_size + (n - v) <= best_size) {
            return;
        }
        if (v == n) {
            best_size = chosen_size;
            best_mask = chosen_mask;
            return;
        }
        if ((blocked_mask & (1u << v)) == 0) {
            self(self, v + 1, chosen_mask | (1u << v), blocked_mask | adj_mask[v],
                 chosen_size + 1);
        }
        self(self, v + 1, chosen_mask, blocked_mask, chosen_size);
    };
    recurse(recurse, 0, 0, 0, 0);

    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        if (best_mask & (1u << v)) {
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace qls
