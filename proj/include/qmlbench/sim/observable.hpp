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
 * Observables as real-weighted sums of Pauli words.
 */
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/sim/state_vector.hpp"

namespace qmlbench::sim {

struct PauliTerm {
    double coeff;
    std::string word; // over {I,X,Y,Z}, one character per qubit
};

class Observable {
  public:
    Observable() = default;

    explicit Observable(std::vector<PauliTerm> terms)
        : terms_(std::move(terms)) {
        require(!terms_.empty(), "Observable: no terms");
        const std::size_t len = terms_.front().word.size();
        for (const auto &t : terms_) {
            require(std::isfinite(t.coeff),
                    "Observable: non-finite coefficient");
            require(t.word.size() == len,
                    "Observable: Pauli words must have equal length (", len,
                    " vs ", t.word.size(), ")");
            for (char ch : t.word) {
                require(ch == 'I' || ch == 'X' || ch == 'Y' || ch == 'Z',
                        "Observable: invalid Pauli character '", ch, "'");
            }
        }
    }

    /// Single Pauli P on one wire of an n-qubit register, e.g. z_on(0, 3) = ZII.
    static Observable pauli_on(char p, int wire, int n_qubits) {
        std::string w(n_qubits, 'I');
        w[wire] = p;
        return Observable({{1.0, std::move(w)}});
    }

    static Observable z_on(int wire, int n_qubits) {
        return pauli_on('Z', wire, n_qubits);
    }

    /// (1/n_vis) * sum_j Z_j over the first n_vis wires.
    static Observable mean_z(int n_vis, int n_qubits) {
        std::vector<PauliTerm> terms;
        for (int j = 0; j < n_vis; ++j) {
            std::string w(n_qubits, 'I');
            w[j] = 'Z';
            terms.push_back({1.0 / n_vis, std::move(w)});
        }
        return Observable(std::move(terms));
    }

    const std::vector<PauliTerm> &terms() const { return terms_; }

    int n_qubits() const {
        return static_cast<int>(terms_.front().word.size());
    }

    double coeff_norm() const {
        double s = 0.0;
        for (const auto &t : terms_) {
            s += std::abs(t.coeff);
        }
        return s;
    }

  private:
    std::vector<PauliTerm> terms_;
};

/// <psi|O|psi>; the imaginary residue of the Hermitian form is discarded.
inline double expectation(const StateVector &state, const Observable &obs) {
    require(obs.n_qubits() == state.n_qubits(),
            "expectation: observable acts on ", obs.n_qubits(),
            " qubits but state has ", state.n_qubits());
    std::vector<int> all_wires(state.n_qubits());
    for (int w = 0; w < state.n_qubits(); ++w) {
        all_wires[w] = w;
    }
    double value = 0.0;
    for (const auto &term : obs.terms()) {
        std::vector<cplx> p_psi = state.amplitudes();
        state.apply_pauli_word_inplace(p_psi, term.word, all_wires);
        cplx ip{0.0, 0.0};
        for (std::size_t i = 0; i < p_psi.size(); ++i) {
            ip += std::conj(state[i]) * p_psi[i];
        }
        value += term.coeff * ip.real();
    }
    return value;
}

} // namespace qmlbench::sim
