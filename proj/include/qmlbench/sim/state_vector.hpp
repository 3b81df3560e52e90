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
 * Dense state-vector register with in-place gate application.
 *
 * Qubit ordering convention: wire 0 is the most significant bit of the basis
 * index, i.e. |q0 q1 ... q_{n-1}> maps to index q0*2^{n-1} + ... + q_{n-1}.
 * Samplers, partial traces and bitstring formatting all follow this.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::sim {

using cplx = std::complex<double>;

class StateVector {
  public:
    /// Dense simulation cap; 2^20 amplitudes is the largest register we allow.
    static constexpr int kMaxQubits = 20;

    explicit StateVector(int n_qubits) : n_qubits_(n_qubits) {
        require(n_qubits >= 1 && n_qubits <= kMaxQubits,
                "StateVector: n_qubits must be in [1, ", kMaxQubits, "], got ",
                n_qubits);
        amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
        amps_[0] = cplx{1.0, 0.0};
    }

    static StateVector from_amplitudes(int n_qubits, std::vector<cplx> amps) {
        StateVector s(n_qubits);
        require(amps.size() == s.size(), "StateVector: expected ", s.size(),
                " amplitudes, got ", amps.size());
        s.amps_ = std::move(amps);
        return s;
    }

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }

    const std::vector<cplx> &amplitudes() const { return amps_; }
    std::vector<cplx> &amplitudes() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    void normalize() {
        const double n = std::sqrt(norm_sq());
        require(n > 0.0, "StateVector: cannot normalize the zero vector");
        for (auto &a : amps_) {
            a /= n;
        }
    }

    /// Bit position (shift amount) of a wire in the basis index.
    std::size_t bit_of(int wire) const {
        return std::size_t{1} << (n_qubits_ - 1 - wire);
    }

    void apply_single(const std::array<cplx, 4> &m, int wire) {
        check_wire(wire);
        const std::size_t bit = bit_of(wire);
        const std::size_t dim = amps_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & bit) {
                continue;
            }
            const cplx a = amps_[i];
            const cplx b = amps_[i | bit];
            amps_[i] = m[0] * a + m[1] * b;
            amps_[i | bit] = m[2] * a + m[3] * b;
        }
    }

    /// General two-qubit gate; matrix rows/cols ordered as |w0 w1> in {00,01,10,11}.
    void apply_two(const std::array<cplx, 16> &m, int w0, int w1) {
        check_wire(w0);
        check_wire(w1);
        require(w0 != w1, "apply_two: wires must be distinct, got ", w0);
        const std::size_t b0 = bit_of(w0);
        const std::size_t b1 = bit_of(w1);
        const std::size_t dim = amps_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & b0) || (i & b1)) {
                continue;
            }
            const std::size_t i00 = i;
            const std::size_t i01 = i | b1;
            const std::size_t i10 = i | b0;
            const std::size_t i11 = i | b0 | b1;
            const cplx a00 = amps_[i00], a01 = amps_[i01];
            const cplx a10 = amps_[i10], a11 = amps_[i11];
            amps_[i00] = m[0] * a00 + m[1] * a01 + m[2] * a10 + m[3] * a11;
            amps_[i01] = m[4] * a00 + m[5] * a01 + m[6] * a10 + m[7] * a11;
            amps_[i10] = m[8] * a00 + m[9] * a01 + m[10] * a10 + m[11] * a11;
            amps_[i11] = m[12] * a00 + m[13] * a01 + m[14] * a10 + m[15] * a11;
        }
    }

    void apply_x(int wire) {
        check_wire(wire);
        const std::size_t bit = bit_of(wire);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (!(i & bit)) {
                std::swap(amps_[i], amps_[i | bit]);
            }
        }
    }

    void apply_h(int wire) {
        static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        apply_single({cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                      cplx{inv_sqrt2, 0}, cplx{-inv_sqrt2, 0}},
                     wire);
    }

    void apply_cnot(int control, int target) {
        check_wire(control);
        check_wire(target);
        require(control != target, "CNOT: control equals target wire ",
                control);
        const std::size_t cb = bit_of(control);
        const std::size_t tb = bit_of(target);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cb) && !(i & tb)) {
                std::swap(amps_[i], amps_[i | tb]);
            }
        }
    }

    void apply_cz(int a, int b) {
        check_wire(a);
        check_wire(b);
        require(a != b, "CZ: wires must be distinct, got ", a);
        const std::size_t mask = bit_of(a) | bit_of(b);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & mask) == mask) {
                amps_[i] = -amps_[i];
            }
        }
    }

    /// Applies exp(-i angle/2 * P) where P is the Pauli word `word` acting on
    /// `wires` (word[k] on wires[k]); uses P^2 = I.
    void apply_pauli_rotation(const std::string &word,
                              const std::vector<int> &wires, double angle) {
        std::vector<cplx> p_psi = amps_;
        apply_pauli_word_inplace(p_psi, word, wires);
        const double c = std::cos(angle / 2.0);
        const cplx mis{0.0, -std::sin(angle / 2.0)};
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amps_[i] = c * amps_[i] + mis * p_psi[i];
        }
    }

    /// In-place |psi> -> P|psi> for a Pauli word.
    void apply_pauli_word_inplace(std::vector<cplx> &amps,
                                  const std::string &word,
                                  const std::vector<int> &wires) const {
        require(word.size() == wires.size(), "Pauli word length ", word.size(),
                " does not match wire count ", wires.size());
        std::size_t flip = 0;
        std::vector<std::pair<std::size_t, char>> phased; // (bit, 'Y' or 'Z')
        for (std::size_t k = 0; k < word.size(); ++k) {
            check_wire(wires[k]);
            const std::size_t bit = bit_of(wires[k]);
            switch (word[k]) {
            case 'I':
                break;
            case 'X':
                flip |= bit;
                break;
            case 'Y':
                flip |= bit;
                phased.emplace_back(bit, 'Y');
                break;
            case 'Z':
                phased.emplace_back(bit, 'Z');
                break;
            default:
                throw InvalidArgument(
                    format_msg("invalid Pauli character '", word[k], "'"));
            }
        }
        std::vector<cplx> out(amps.size());
        for (std::size_t src = 0; src < amps.size(); ++src) {
            cplx phase{1.0, 0.0};
            for (const auto &[bit, p] : phased) {
                const bool one = (src & bit) != 0;
                if (p == 'Z') {
                    phase *= one ? -1.0 : 1.0;
                } else { // Y|0> = i|1>, Y|1> = -i|0>
                    phase *= one ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
                }
            }
            out[src ^ flip] = phase * amps[src];
        }
        amps = std::move(out);
    }

    double probability(std::size_t basis_index) const {
        return std::norm(amps_[basis_index]);
    }

    /// Formats a basis index as a bitstring, wire 0 first.
    std::string bitstring(std::size_t basis_index) const {
        std::string s(n_qubits_, '0');
        for (int w = 0; w < n_qubits_; ++w) {
            if (basis_index & bit_of(w)) {
                s[w] = '1';
            }
        }
        return s;
    }

  private:
    void check_wire(int wire) const {
        require(wire >= 0 && wire < n_qubits_, "wire ", wire,
                " out of range for ", n_qubits_, "-qubit register");
    }

    int n_qubits_;
    std::vector<cplx> amps_;
};

/// |<a|b>|^2 for two states on the same register.
inline double state_overlap(const StateVector &a, const StateVector &b) {
    require(a.n_qubits() == b.n_qubits(), "state_overlap: register mismatch (",
            a.n_qubits(), " vs ", b.n_qubits(), " qubits)");
    cplx ip{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        ip += std::conj(a[i]) * b[i];
    }
    return std::norm(ip);
}

/// Embeds x into the first |x| amplitudes, pads with 1/2^n and normalizes.
inline StateVector amplitude_embed(const std::vector<double> &x,
                                   int n_qubits) {
    require(!x.empty(), "amplitude_embed: empty input vector");
    StateVector s(n_qubits);
    require(x.size() <= s.size(), "amplitude_embed: ", x.size(),
            " values do not fit into ", n_qubits, " qubits (", s.size(),
            " amplitudes)");
    const double pad = 1.0 / static_cast<double>(s.size());
    auto &amps = s.amplitudes();
    for (std::size_t i = 0; i < s.size(); ++i) {
        amps[i] = cplx{i < x.size() ? x[i] : pad, 0.0};
    }
    s.normalize();
    return s;
}

} // namespace qmlbench::sim
