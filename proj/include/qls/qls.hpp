// Quantum Local Search outer loop: pick a root, carve out the BFS ball,
// optimize the constrained ansatz over several mixer permutations, extract the
// best measured bitstring, merge it into the growing global independent set,
// and walk the graph until every node has been covered.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qls/ansatz.hpp"
#include "qls/baseline.hpp"
#include "qls/graph.hpp"
#include "qls/nelder_mead.hpp"
#include "qls/random.hpp"
#include "qls/statevector.hpp"

namespace qls {

enum class RecombineMode {
    // Already-selected nodes inside a neighborhood start clamped to |1>, so
    // the mixer's neighbor projector blocks conflicting additions and merged
    // solutions are feasible by construction.
    Clamped,
    // All-zero initial state; conflicts are resolved greedily at merge time
    // by keeping earlier-committed nodes and dropping later ones.
    PaperLiteral,
};

struct QlsConfig {
    int ns = 2;          // neighborhood radius (hops)
    int k = 4;           // max partial mixers per neighborhood
    int rounds = 5;      // permutation rounds per neighborhood
    int shots = 1024;    // samples for bitstring extraction; 0 = exact-support mode
    OptimizerConfig optimizer{};
    int control_budget = kDefaultControlBudget;
    RecombineMode recombine = RecombineMode::Clamped;
};

struct GlobalSolution {
    std::set<int> selected;
    std::set<int> visited;
};

struct IterationRecord {
    int iteration = 0;  // 1-based
    int root = 0;
    int neighborhood_size = 0;
    int active_mixers = 0;
    std::vector<int> round_best_hw;  // best Hamming weight seen in each round
    int nodes_added = 0;
    int global_size = 0;             // |selected| after the merge
    double running_ratio = 0.0;      // global_size / E_BH
    int objective_evals = 0;
};

struct RunResult {
    GlobalSolution solution;
    std::vector<IterationRecord> trace;
    int e_bh = 0;  // upfront baseline size used for running ratios
};

namespace detail {

inline int hamming_weight(std::uint32_t bits) { return std::popcount(bits); }

struct ExtractedBits {
    std::uint32_t bits = 0;
    int hw = 0;
    double prob = 0.0;
};

// Candidate comparison: higher Hamming weight wins, then higher probability,
// then the lexicographically smaller rendered bitstring.
inline bool better_candidate(const ExtractedBits& a, const ExtractedBits& b, int m) {
    if (a.hw != b.hw) {
        return a.hw > b.hw;
    }
    if (a.prob != b.prob) {
        return a.prob > b.prob;
    }
    return to_bit_string(a.bits, m) < to_bit_string(b.bits, m);
}

}  // namespace detail

// One measurement-style extraction from a final state. With shots > 0 the
// candidates are the sampled bitstrings; with shots = 0 they are all basis
// states carrying probability >= 1e-6.
inline detail::ExtractedBits extract_best_bitstring(const StateVector& psi, int shots, Rng& rng) {
    detail::ExtractedBits best;
    bool have = false;
    auto consider = [&](std::uint32_t bits) {
        detail::ExtractedBits cand{bits, detail::hamming_weight(bits), std::norm(psi.amps[bits])};
        if (!have || detail::better_candidate(cand, best, psi.num_qubits)) {
            best = cand;
            have = true;
        }
    };
    if (shots > 0) {
        const Counts counts = sample(psi, shots, rng);
        for (const auto& [key, count] : counts.histogram) {
            consider(from_bit_string(key));
        }
    } else {
        constexpr double kSupportThreshold = 1e-6;
        for (std::uint32_t b = 0; b < psi.amps.size(); ++b) {
            if (std::norm(psi.amps[b]) >= kSupportThreshold) {
                consider(b);
            }
        }
    }
    return best;
}

struct RoundOutcome {
    std::uint32_t bits = 0;          // best local bitstring across all rounds
    std::vector<int> round_best_hw;  // per-round best Hamming weights
    int active_mixers = 0;
    int objective_evals = 0;
};

// Runs the configured number of permutation rounds on one neighborhood. Each
// round draws a fresh mixer permutation and fresh random angles in [0, 2pi),
// maximizes the exact energy with Nelder-Mead, and extracts one bitstring
// from the optimized state. The best bitstring across rounds is returned.
inline RoundOutcome neighborhood_round(const Neighborhood& nb, const GlobalSolution& global,
                                       const QlsConfig& cfg, Rng& rng) {
    if (nb.size() > kMaxQubits) {
        throw std::runtime_error("neighborhood_round: neighborhood exceeds the qubit cap");
    }
    std::vector<int> clamped;
    if (cfg.recombine == RecombineMode::Clamped) {
        for (int i = 0; i < nb.size(); ++i) {
            if (global.selected.count(nb.nodes[i])) {
                clamped.push_back(i);
            }
        }
    }
    const std::vector<int> eligible = eligible_mixer_nodes(nb, clamped, cfg.control_budget);

    RoundOutcome outcome;
    detail::ExtractedBits best;
    bool have = false;
    for (int round = 0; round < cfg.rounds; ++round) {
        const MixerPlan plan = build_plan(nb, eligible, cfg.k, rng);
        outcome.active_mixers = static_cast<int>(plan.active.size());

        std::vector<double> x0(1 + plan.active.size());
        for (double& x : x0) {
            x = uniform_angle(rng);
        }
        auto objective = [&](std::span<const double> x) {
            AnsatzParams params;
            params.gamma = x[0];
            params.betas.assign(x.begin() + 1, x.end());
            return evaluate(nb, plan, params, clamped).energy;
        };
        const OptimizeResult opt = maximize(objective, x0, cfg.optimizer);
        outcome.objective_evals += opt.evals;

        AnsatzParams params;
        params.gamma = opt.x[0];
        params.betas.assign(opt.x.begin() + 1, opt.x.end());
        const StateVector psi = evaluate(nb, plan, params, clamped).state;

        const detail::ExtractedBits round_best = extract_best_bitstring(psi, cfg.shots, rng);
        outcome.round_best_hw.push_back(round_best.hw);
        if (!have || detail::better_candidate(round_best, best, nb.size())) {
            best = round_best;
            have = true;
        }
    }
    outcome.bits = best.bits;
    return outcome;
}

// Merges a local bitstring into the global solution and marks the whole
// neighborhood visited. Clamped mode adds every 1-bit and asserts global
// independence (a violation means an ansatz or clamping bug, never swallowed).
// PaperLiteral mode keeps earlier-committed nodes and drops conflicting
// additions greedily in local-index order.
inline void merge_local(const Graph& g, GlobalSolution& global, const Neighborhood& nb,
                        std::uint32_t bits, RecombineMode mode) {
    if (nb.size() < 32 && (bits >> nb.size()) != 0) {
        throw std::invalid_argument("merge_local: bitstring wider than the neighborhood");
    }
    if (mode == RecombineMode::Clamped) {
        for (int i = 0; i < nb.size(); ++i) {
            if (bits & (1u << i)) {
                global.selected.insert(nb.nodes[i]);
            }
        }
        std::vector<int> as_list(global.selected.begin(), global.selected.end());
        if (!is_independent_set(g, as_list)) {
            throw std::logic_error("merge_local: merged solution is not independent");
        }
    } else {
        for (int i = 0; i < nb.size(); ++i) {
            if (!(bits & (1u << i))) {
                continue;
            }
            const int node = nb.nodes[i];
            if (global.selected.count(node)) {
                continue;
            }
            bool conflict = false;
            for (int w : g.neighbors(node)) {
                if (global.selected.count(w)) {
                    conflict = true;
                    break;
                }
            }
            if (!conflict) {
                global.selected.insert(node);
            }
        }
    }
    for (int v : nb.nodes) {
        global.visited.insert(v);
    }
}

// Next root: a uniformly random unvisited node at distance exactly ns from the
// current root; if that frontier is empty or fully visited, a uniformly random
// unvisited node anywhere.
inline int next_root(const Graph& g, int current_root, const std::set<int>& visited, int ns,
                     Rng& rng) {
    if (static_cast<int>(visited.size()) >= g.node_count()) {
        throw std::invalid_argument("next_root: all nodes already visited");
    }
    std::vector<int> dist(g.node_count(), -1);
    dist[current_root] = 0;
    std::vector<int> frontier{current_root};
    for (int layer = 1; layer <= ns && !frontier.empty(); ++layer) {
        std::vector<int> next;
        for (int u : frontier) {
            for (int v : g.neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = layer;
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<int> candidates;
    for (int v = 0; v < g.node_count(); ++v) {
        if (dist[v] == ns && !visited.count(v)) {
            candidates.push_back(v);
        }
    }
    if (candidates.empty()) {
        for (int v = 0; v < g.node_count(); ++v) {
            if (!visited.count(v)) {
                candidates.push_back(v);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    return pick_uniform(candidates, rng);
}

// Full quantum local search. Deterministic for a fixed engine seed; the
// returned trace has one record per iteration.
inline RunResult run_qls(const Graph& g, const QlsConfig& cfg, Rng& rng) {
    if (cfg.ns < 1 || cfg.k < 1 || cfg.rounds < 1 || cfg.shots < 0) {
        throw std::invalid_argument("run_qls: need ns >= 1, k >= 1, rounds >= 1, shots >= 0");
    }
    RunResult result;
    result.e_bh = boppana_halldorsson(g).size;
    const int n = g.node_count();
    if (n == 0) {
        return result;
    }

    int root = static_cast<int>(uniform_below(rng, n));
    int iteration = 0;
    while (true) {
        ++iteration;
        int radius = cfg.ns;
        Neighborhood nb = ball(g, root, radius);
        // Dense graphs can overflow the simulator; shrink the ball rather than
        // truncate it, preserving the BFS-ball semantics.
        while (nb.size() > kMaxQubits && radius > 0) {
            --radius;
            nb = ball(g, root, radius);
        }

        const RoundOutcome outcome = neighborhood_round(nb, result.solution, cfg, rng);
        const int before = static_cast<int>(result.solution.selected.size());
        merge_local(g, result.solution, nb, outcome.bits, cfg.recombine);
        const int after = static_cast<int>(result.solution.selected.size());

        IterationRecord record;
        record.iteration = iteration;
        record.root = root;
        record.neighborhood_size = nb.size();
        record.active_mixers = outcome.active_mixers;
        record.round_best_hw = outcome.round_best_hw;
        record.nodes_added = after - before;
        record.global_size = after;
        record.running_ratio = result.e_bh > 0 ? bh_ratio(after, result.e_bh) : 0.0;
        record.objective_evals = outcome.objective_evals;
        result.trace.push_back(std::move(record));

        if (static_cast<int>(result.solution.visited.size()) >= n) {
            break;
        }
        root = next_root(g, root, result.solution.visited, cfg.ns, rng);
    }
    return result;
}

}  // namespace qls
