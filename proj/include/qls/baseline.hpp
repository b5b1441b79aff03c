// Classical comparison point: Ramsey-type clique/independent-set recursion
// and the clique-removal independent-set approximation of Boppana and
// Halldorsson, plus the E_QLS/E_BH performance ratio.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qls/graph.hpp"

namespace qls {

struct RamseyResult {
    std::vector<int> clique;
    std::vector<int> independent;
};

namespace detail {

// Recursion over a sorted node subset. Pivot is the lowest id: one branch
// descends into the pivot's neighbors, the other into the non-neighbors.
// Ties between branch results go to the pivot-containing set.
inline RamseyResult ramsey_subset(const Graph& g, const std::vector<int>& nodes) {
    if (nodes.empty()) {
        return {};
    }
    const int pivot = nodes.front();
    std::vector<int> in_neigh;
    std::vector<int> out_neigh;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (g.has_edge(pivot, nodes[i])) {
            in_neigh.push_back(nodes[i]);
        } else {
            out_neigh.push_back(nodes[i]);
        }
    }
    RamseyResult with = ramsey_subset(g, in_neigh);
    RamseyResult without = ramsey_subset(g, out_neigh);

    RamseyResult out;
    if (with.clique.size() + 1 >= without.clique.size()) {
        out.clique.push_back(pivot);
        out.clique.insert(out.clique.end(), with.clique.begin(), with.clique.end());
    } else {
        out.clique = std::move(without.clique);
    }
    if (without.independent.size() + 1 >= with.independent.size()) {
        out.independent.push_back(pivot);
        out.independent.insert(out.independent.end(), without.independent.begin(),
                               without.independent.end());
    } else {
        out.independent = std::move(with.independent);
    }
    return out;
}

}  // namespace detail

// Returns (clique, independent set) found by the pivot recursion over the
// whole graph. Both sets are returned in ascending id order.
inline RamseyResult ramsey(const Graph& g) {
    std::vector<int> nodes(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        nodes[v] = v;
    }
    return detail::ramsey_subset(g, nodes);
}

struct BaselineResult {
    std::vector<int> independent_set;
    int size = 0;
};

// Clique removal: run the Ramsey recursion on the remaining graph, record the
// independent set, delete the clique, repeat until no nodes remain; keep the
// largest independent set seen. Deterministic via the lowest-id pivot rule.
inline BaselineResult boppana_halldorsson(const Graph& g) {
    std::vector<int> remaining(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) {
        remaining[v] = v;
    }
    BaselineResult best;
    while (!remaining.empty()) {
        RamseyResult round = detail::ramsey_subset(g, remaining);
        if (static_cast<int>(round.independent.size()) > best.size) {
            best.independent_set = round.independent;
            best.size = static_cast<int>(round.independent.size());
        }
        std::vector<int> next;
        next.reserve(remaining.size());
        std::size_t ci = 0;
        for (int v : remaining) {
            // round.clique is ascending and a subset of remaining.
            if (ci < round.clique.size() && round.clique[ci] == v) {
                ++ci;
            } else {
                next.push_back(v);
            }
        }
        remaining = std::move(next);
    }
    return best;
}

// Performance ratio E_QLS / E_BH.
inline double bh_ratio(int e_qls, int e_bh) {
    if (e_bh < 1) {
        throw std::invalid_argument("bh_ratio: baseline size must be >= 1");
    }
    return static_cast<double>(e_qls) / static_cast<double>(e_bh);
}

}  // namespace qls
