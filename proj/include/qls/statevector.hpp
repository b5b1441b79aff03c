// Dense statevector simulation of the two gate families the constrained-mixer
// ansatz needs: the Hamming-weight phase separator and the neighbor-controlled
// partial mixer, plus exact expectation, sampling, and a dense-matrix oracle
// for tests.
//
// Bit convention: local node j lives at bit j of the basis index, bit 0 least
// significant. Rendered bitstrings are node-0-first, so basis index 1 with
// m = 3 prints as "100".
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qls/random.hpp"

namespace qls {

inline constexpr int kMaxQubits = 24;

using Amplitude = std::complex<double>;

struct StateVector {
    int num_qubits = 0;
    std::vector<Amplitude> amps;

    std::size_t dimension() const { return amps.size(); }

    double norm_squared() const {
        double total = 0.0;
        for (const auto& a : amps) {
            total += std::norm(a);
        }
        return total;
    }
};

struct Counts {
    std::map<std::string, int> histogram;
    int total_shots = 0;
};

inline std::string to_bit_string(std::uint32_t basis, int m) {
    std::string s(static_cast<std::size_t>(m), '0');
    for (int j = 0; j < m; ++j) {
        if (basis & (1u << j)) {
            s[static_cast<std::size_t>(j)] = '1';
        }
    }
    return s;
}

inline std::uint32_t from_bit_string(const std::string& bits) {
    std::uint32_t basis = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1') {
            basis |= 1u << j;
        } else if (bits[j] != '0') {
            throw std::invalid_argument("from_bit_string: expected '0'/'1'");
        }
    }
    return basis;
}

// Computational basis state with bit j set iff j is in clamped_ones.
inline StateVector init_state(int m, std::span<const int> clamped_ones = {}) {
    if (m < 0 || m > kMaxQubits) {
        throw std::runtime_error("init_state: qubit count exceeds the 24-qubit cap");
    }
    StateVector psi;
    psi.num_qubits = m;
    psi.amps.assign(std::size_t{1} << m, Amplitude{0.0, 0.0});
    std::uint32_t basis = 0;
    for (int j : clamped_ones) {
        if (j < 0 || j >= m) {
            throw std::invalid_argument("init_state: clamped index out of range");
        }
        basis |= 1u << j;
    }
    psi.amps[basis] = Amplitude{1.0, 0.0};
    return psi;
}

// Diagonal phase e^{i*gamma*hw(b)} per basis state b. Probabilities unchanged.
inline void apply_phase_separator(StateVector& psi, double gamma) {
    const int m = psi.num_qubits;
    std::vector<Amplitude> phase(static_cast<std::size_t>(m) + 1);
    for (int w = 0; w <= m; ++w) {
        phase[static_cast<std::size_t>(w)] = std::polar(1.0, gamma * w);
    }
    for (std::uint32_t b = 0; b < psi.amps.size(); ++b) {
        psi.amps[b] *= phase[static_cast<std::size_t>(std::popcount(b))];
    }
}

// Partial mixer V(beta) = I + (e^{-i*beta*X_target} - I) * P, where P projects
// onto all control qubits being |0>. Amplitude pairs whose control bits are
// all zero mix through the X rotation; everything else is untouched.
// Convention: e^{-i*beta*X} = cos(beta) I - i sin(beta) X.
inline void apply_partial_mixer(StateVector& psi, int target, std::span<const int> controls,
                                double beta) {
    const int m = psi.num_qubits;
    if (target < 0 || target >= m) {
        throw std::invalid_argument("apply_partial_mixer: target out of range");
    }
    std::uint32_t control_mask = 0;
    for (int c : controls) {
        if (c < 0 || c >= m) {
            throw std::invalid_argument("apply_partial_mixer: control out of range");
        }
        if (c == target) {
            throw std::invalid_argument("apply_partial_mixer: target cannot be a control");
        }
        control_mask |= 1u << c;
    }
    const std::uint32_t target_bit = 1u << target;
    const double cos_b = std::cos(beta);
    const Amplitude minus_i_sin_b{0.0, -std::sin(beta)};
    for (std::uint32_t b = 0; b < psi.amps.size(); ++b) {
        if ((b & target_bit) != 0 || (b & control_mask) != 0) {
            continue;
        }
        const Amplitude a0 = psi.amps[b];
        const Amplitude a1 = psi.amps[b | target_bit];
        psi.amps[b] = cos_b * a0 + minus_i_sin_b * a1;
        psi.amps[b | target_bit] = minus_i_sin_b * a0 + cos_b * a1;
    }
}

// <psi| H |psi> with H the Hamming-weight operator. Exact, variance-free.
inline double expectation_hamming(const StateVector& psi) {
    double total = 0.0;
    for (std::uint32_t b = 0; b < psi.amps.size(); ++b) {
        total += std::norm(psi.amps[b]) * std::popcount(b);
    }
    return total;
}

// iid measurement samples in the computational basis.
inline Counts sample(const StateVector& psi, int shots, Rng& rng) {
    if (shots < 1) {
        throw std::invalid_argument("sample: shots must be >= 1");
    }
    std::vector<double> cumulative(psi.amps.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < psi.amps.size(); ++b) {
        acc += std::norm(psi.amps[b]);
        cumulative[b] = acc;
    }
    Counts counts;
    counts.total_shots = shots;
    for (int s = 0; s < shots; ++s) {
        const double u = uniform_real01(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto b = static_cast<std::uint32_t>(it == cumulative.end()
                                                      ? cumulative.size() - 1
                                                      : static_cast<std::size_t>(
                                                            it - cumulative.begin()));
        counts.histogram[to_bit_string(b, psi.num_qubits)] += 1;
    }
    return counts;
}

using DenseMatrix = std::vector<std::vector<Amplitude>>;

// Test oracle: the partial mixer as an explicit 2^m x 2^m matrix, assembled
// column by column from V = I + (e^{-i*beta*X} - I) * P. Capped at m <= 6.
inline DenseMatrix dense_mixer_matrix(int m, int target, std::span<const int> controls,
                                      double beta) {
    if (m < 1 || m > 6) {
        throw std::runtime_error("dense_mixer_matrix: supported only for m <= 6");
    }
    if (target < 0 || target >= m) {
        throw std::invalid_argument("dense_mixer_matrix: target out of range");
    }
    std::uint32_t control_mask = 0;
    for (int c : controls) {
        if (c < 0 || c >= m) {
            throw std::invalid_argument("dense_mixer_matrix: control out of range");
        }
        if (c == target) {
            throw std::invalid_argument("dense_mixer_matrix: target cannot be a control");
        }
        control_mask |= 1u << c;
    }
    const std::size_t dim = std::size_t{1} << m;
    DenseMatrix matrix(dim, std::vector<Amplitude>(dim, Amplitude{0.0, 0.0}));
    const Amplitude cos_b{std::cos(beta), 0.0};
    const Amplitude minus_i_sin_b{0.0, -std::sin(beta)};
    for (std::uint32_t col = 0; col < dim; ++col) {
        if ((col & control_mask) != 0) {
            matrix[col][col] = Amplitude{1.0, 0.0};
        } else {
            matrix[col][col] = cos_b;
            matrix[col ^ (1u << target)][col] = minus_i_sin_b;
        }
    }
    return matrix;
}

inline StateVector apply_dense(const DenseMatrix& matrix, const StateVector& psi) {
    StateVector out;
    out.num_qubits = psi.num_qubits;
    out.amps.assign(psi.amps.size(), Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        Amplitude acc{0.0, 0.0};
        for (std::size_t c = 0; c < matrix.size(); ++c) {
            acc += matrix[r][c] * psi.amps[c];
        }
        out.amps[r] = acc;
    }
    return out;
}

}  // namespace qls
