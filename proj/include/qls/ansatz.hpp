// Neighborhood ansatz construction and evaluation: choose which nodes get
// partial mixers, permute their application order, and run the depth-1
// circuit  U_M(betas) * U_C(gamma) |s>  to an exact energy.
#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "qls/graph.hpp"
#include "qls/random.hpp"
#include "qls/statevector.hpp"

namespace qls {

inline constexpr int kDefaultControlBudget = kMaxQubits - 1;

struct MixerPlan {
    std::vector<int> eligible;               // BFS-ordered local indices passing the filters
    std::vector<int> active;                 // chosen targets, in permuted application order
    std::vector<std::vector<int>> controls;  // per active target: its in-graph neighbors (local)
};

struct AnsatzParams {
    double gamma = 0.0;
    std::vector<double> betas;  // one per active mixer, in application order
};

// Local indices that may receive a partial mixer, in BFS order from the root:
// interior nodes (every graph neighbor inside the ball) whose neighbor count
// fits the control budget and which are not clamped to |1>.
inline std::vector<int> eligible_mixer_nodes(const Neighborhood& nb,
                                             std::span<const int> clamped_ones,
                                             int control_budget = kDefaultControlBudget) {
    std::vector<char> clamped(nb.size(), 0);
    for (int j : clamped_ones) {
        if (j < 0 || j >= nb.size()) {
            throw std::invalid_argument("eligible_mixer_nodes: clamped index out of range");
        }
        clamped[j] = 1;
    }
    std::vector<int> eligible;
    for (int i = 0; i < nb.size(); ++i) {
        if (!nb.interior_mask[i] || clamped[i]) {
            continue;
        }
        if (static_cast<int>(nb.local_adj[i].size()) > control_budget) {
            continue;
        }
        eligible.push_back(i);
    }
    return eligible;
}

// Takes the first min(k, |eligible|) eligible nodes and permutes their
// application order uniformly at random.
inline MixerPlan build_plan(const Neighborhood& nb, std::span<const int> eligible, int k,
                            Rng& perm_rng) {
    if (k < 1) {
        throw std::invalid_argument("build_plan: k must be >= 1");
    }
    MixerPlan plan;
    plan.eligible.assign(eligible.begin(), eligible.end());
    const int count = std::min<int>(k, static_cast<int>(eligible.size()));
    plan.active.assign(eligible.begin(), eligible.begin() + count);
    shuffle(plan.active, perm_rng);
    plan.controls.reserve(plan.active.size());
    for (int target : plan.active) {
        plan.controls.push_back(nb.local_adj[target]);
    }
    return plan;
}

struct Evaluation {
    double energy = 0.0;
    StateVector state;
};

// psi = [prod_i V_i(beta_i)] * U_C(gamma) * |s(clamped)>, mixers applied
// left-to-right in the plan's permuted order; energy is the exact
// Hamming-weight expectation of the final state.
inline Evaluation evaluate(const Neighborhood& nb, const MixerPlan& plan,
                           const AnsatzParams& params, std::span<const int> clamped_ones = {}) {
    if (params.betas.size() != plan.active.size()) {
        throw std::invalid_argument("evaluate: parameter count does not match plan");
    }
    Evaluation out;
    out.state = init_state(nb.size(), clamped_ones);
    apply_phase_separator(out.state, params.gamma);
    for (std::size_t i = 0; i < plan.active.size(); ++i) {
        apply_partial_mixer(out.state, plan.active[i], plan.controls[i], params.betas[i]);
    }
    out.energy = expectation_hamming(out.state);
    return out;
}

}  // namespace qls
