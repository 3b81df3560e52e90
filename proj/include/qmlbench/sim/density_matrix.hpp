// Copyright 2026 The qmlbench developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense density matrices, thermal (Gibbs) states and partial traces.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/sim/observable.hpp"
#include "qmlbench/sim/state_vector.hpp"

namespace qmlbench::sim {

class DensityMatrix {
  public:
    /// 2^12 x 2^12 is the largest dense matrix we allow.
    static constexpr int kMaxQubits = 12;

    DensityMatrix(int n_qubits, Eigen::MatrixXcd m)
        : n_qubits_(n_qubits), mat_(std::move(m)) {
        require(n_qubits >= 1 && n_qubits <= kMaxQubits,
                "DensityMatrix: n_qubits must be in [1, ", kMaxQubits,
                "], got ", n_qubits);
        const Eigen::Index dim = Eigen::Index{1} << n_qubits;
        require(mat_.rows() == dim && mat_.cols() == dim,
                "DensityMatrix: expected ", dim, "x", dim, " matrix");
    }

    int n_qubits() const { return n_qubits_; }
    const Eigen::MatrixXcd &matrix() const { return mat_; }

    double trace_real() const { return mat_.trace().real(); }

    double hermiticity_error() const {
        return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_,
                                                           Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    double expectation(const Observable &obs) const {
        require(obs.n_qubits() == n_qubits_, "expectation: observable on ",
                obs.n_qubits(), " qubits, density matrix on ", n_qubits_);
        const Eigen::MatrixXcd m = observable_matrix(obs);
        return (mat_ * m).trace().real();
    }

  private:
    int n_qubits_;
    Eigen::MatrixXcd mat_;

  public:
    /// Dense matrix of a Pauli-sum observable.
    static Eigen::MatrixXcd observable_matrix(const Observable &obs) {
        const int n = obs.n_qubits();
        const Eigen::Index dim = Eigen::Index{1} << n;
        Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
        Eigen::Matrix2cd paulis[4];
        paulis[0] << 1, 0, 0, 1;                                       // I
        paulis[1] << 0, 1, 1, 0;                                       // X
        paulis[2] << 0, cplx(0, -1), cplx(0, 1), 0;                    // Y
        paulis[3] << 1, 0, 0, -1;                                      // Z
        auto index_of = [](char c) {
            switch (c) {
            case 'I': return 0;
            case 'X': return 1;
            case 'Y': return 2;
            default: return 3;
            }
        };
        for (const auto &term : obs.terms()) {
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
            for (char c : term.word) { // wire 0 first = leftmost Kron factor
                const Eigen::Matrix2cd &p = paulis[index_of(c)];
                Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
                for (Eigen::Index r = 0; r < acc.rows(); ++r) {
                    for (Eigen::Index s = 0; s < acc.cols(); ++s) {
                        next.block(r * 2, s * 2, 2, 2) = acc(r, s) * p;
                    }
                }
                acc = std::move(next);
            }
            total += term.coeff * acc;
        }
        return total;
    }
};

/// exp(-H/T)/Z via Hermitian eigendecomposition.
inline DensityMatrix gibbs_state(const Observable &hamiltonian,
                                 double temperature) {
    require(temperature > 0.0, "gibbs_state: temperature must be positive, got ",
            temperature);
    const int n = hamiltonian.n_qubits();
    require(n <= DensityMatrix::kMaxQubits, "gibbs_state: register of ", n,
            " qubits exceeds the dense cap of ", DensityMatrix::kMaxQubits);
    const Eigen::MatrixXcd h = DensityMatrix::observable_matrix(hamiltonian);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXd evals = es.eigenvalues();
    const double shift = evals.minCoeff(); // avoids overflow in exp
    Eigen::VectorXd boltzmann =
        ((evals.array() - shift) / -temperature).exp();
    boltzmann /= boltzmann.sum();
    const Eigen::MatrixXcd rho = es.eigenvectors() *
                                 boltzmann.asDiagonal() *
                                 es.eigenvectors().adjoint();
    return DensityMatrix(n, rho);
}

/// Partial trace of a pure state down to a single wire.
inline DensityMatrix reduced_density_matrix(const StateVector &state,
                                            int wire) {
    require(wire >= 0 && wire < state.n_qubits(),
            "reduced_density_matrix: wire ", wire, " out of range for ",
            state.n_qubits(), " qubits");
    const std::size_t bit = state.bit_of(wire);
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const cplx a0 = state[i];
        const cplx a1 = state[i | bit];
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return DensityMatrix(1, rho);
}

/// Partial trace keeping the given wires (ascending output ordering follows
/// the order of `keep`).
inline DensityMatrix reduced_density_matrix(const StateVector &state,
                                            const std::vector<int> &keep) {
    require(!keep.empty(), "reduced_density_matrix: no wires kept");
    const int k = static_cast<int>(keep.size());
    require(k <= DensityMatrix::kMaxQubits,
            "reduced_density_matrix: too many wires kept");
    std::vector<std::size_t> keep_bits;
    for (int w : keep) {
        require(w >= 0 && w < state.n_qubits(),
                "reduced_density_matrix: wire ", w, " out of range");
        keep_bits.push_back(state.bit_of(w));
    }
    const std::size_t sub_dim = std::size_t{1} << k;
    auto sub_index = [&](std::size_t full) {
        std::size_t r = 0;
        for (int j = 0; j < k; ++j) {
            if (full & keep_bits[j]) {
                r |= std::size_t{1} << (k - 1 - j);
            }
        }
        return r;
    };
    std::size_t keep_mask = 0;
    for (auto b : keep_bits) {
        keep_mask |= b;
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sub_dim, sub_dim);
    // Group amplitudes by the traced-out component of their index.
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::size_t env_i = i & ~keep_mask;
        const std::size_t ri = sub_index(i);
        for (std::size_t j = 0; j < state.size(); ++j) {
            if ((j & ~keep_mask) != env_i) {
                continue;
            }
            rho(ri, sub_index(j)) += state[i] * std::conj(state[j]);
        }
    }
    return DensityMatrix(k, rho);
}

} // namespace qmlbench::sim
