// Derivative-free maximization with the Nelder-Mead simplex
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace qls {

struct OptimizerConfig {
    int max_evals = 0;          // 0 = 250 * (dim + 1)
    double f_tol = 1e-3;        // function-value spread tolerance
    double x_tol = 1e-2;        // parameter spread tolerance (inf-norm)
    double initial_step = 0.25; // per-coordinate simplex offset, radians

    int resolved_max_evals(int dim) const {
        return max_evals > 0 ? max_evals : 250 * (dim + 1);
    }
};

struct OptimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int evals = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Maximizes the objective starting from x0. Terminates when both the simplex
// function-value spread is below f_tol and every vertex is within x_tol of the
// best vertex, or when the evaluation budget is spent. Returns the best point
// ever evaluated, so the result never falls below objective(x0). Deterministic.
inline OptimizeResult maximize(const Objective& objective, std::span<const double> x0,
                               const OptimizerConfig& cfg = {}) {
    if (cfg.f_tol <= 0 || cfg.x_tol <= 0) {
        throw std::invalid_argument("maximize: tolerances must be positive");
    }
    const int dim = static_cast<int>(x0.size());
    const int budget = cfg.resolved_max_evals(dim);

    OptimizeResult result;
    result.x.assign(x0.begin(), x0.end());
    result.value = -std::numeric_limits<double>::infinity();

    int evals = 0;
    bool exhausted = false;
    // Internally minimizes g = -objective.
    auto eval = [&](const std::vector<double>& x, double& g_out) {
        if (evals >= budget) {
            exhausted = true;
            return false;
        }
        const double f = objective(std::span<const double>(x.data(), x.size()));
        ++evals;
        if (f > result.value) {
            result.value = f;
            result.x = x;
        }
        g_out = -f;
        return true;
    };

    const size_t nv = dim + 1;
    std::vector<std::vector<double>> vertex(nv, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> g(nv, 0.0);
    for (int i = 0; i < dim; ++i) {
        vertex[i + 1][i] += cfg.initial_step;
    }
    for (size_t i = 0; i < nv && !exhausted; ++i) {
        eval(vertex[i], g[i]);
    }
    if (dim == 0) {
        result.evals = evals;
        return result;
    }

    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    std::vector<size_t> order(nv);
    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);

    while (!exhausted) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return g[a] < g[b]; });
        const size_t best = order.front();
        const size_t worst = order.back();
        const size_t second_worst = order[nv - 2];

        double x_spread = 0.0;
        for (const auto& v : vertex) {
            for (int i = 0; i < dim; ++i) {
                x_spread = std::max(x_spread, std::abs(v[i] - vertex[best][i]));
            }
        }
        if (g[worst] - g[best] < cfg.f_tol && x_spread < cfg.x_tol) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (size_t idx : order) {
            if (idx == worst) {
                continue;
            }
            for (int i = 0; i < dim; ++i) {
                centroid[i] += vertex[idx][i];
            }
        }
        for (double& c : centroid) {
            c /= dim;
        }

        for (int i = 0; i < dim; ++i) {
            xr[i] = centroid[i] + kReflect * (centroid[i] - vertex[worst][i]);
        }
        double gr = 0.0;
        if (!eval(xr, gr)) {
            break;
        }

        if (gr < g[best]) {
            for (int i = 0; i < dim; ++i) {
                xe[i] = centroid[i] + kExpand * (xr[i] - centroid[i]);
            }
            double ge = 0.0;
            if (!eval(xe, ge)) {
                break;
            }
            if (ge < gr) {
                vertex[worst] = xe;
                g[worst] = ge;
            } else {
                vertex[worst] = xr;
                g[worst] = gr;
            }
        } else if (gr < g[second_worst]) {
            vertex[worst] = xr;
            g[worst] = gr;
        } else {
            bool shrink = false;
            if (gr < g[worst]) {
                // Outside contraction.
                for (int i = 0; i < dim; ++i) {
                    xc[i] = centroid[i] + kContract * (xr[i] - centroid[i]);
                }
                double gc = 0.0;
                if (!eval(xc, gc)) {
                    break;
                }
                if (gc <= gr) {
                    vertex[worst] = xc;
                    g[worst] = gc;
                } else {
                    shrink = true;
                }
            } else {
                // Inside contraction.
                for (int i = 0; i < dim; ++i) {
                    xc[i] = centroid[i] + kContract * (vertex[worst][i] - centroid[i]);
                }
                double gc = 0.0;
                if (!eval(xc, gc)) {
                    break;
                }
                if (gc < g[worst]) {
                    vertex[worst] = xc;
                    g[worst] = gc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (size_t idx : order) {
                    if (idx == best) {
                        continue;
                    }
                    for (int i = 0; i < dim; ++i) {
                        vertex[idx][i] = vertex[best][i] + kShrink * (vertex[idx][i] - vertex[best][i]);
                    }
                    if (!eval(vertex[idx], g[idx])) {
                        break;
                    }
                }
            }
        }
    }

    result.evals = evals;
    return result;
}

}  // namespace qls
