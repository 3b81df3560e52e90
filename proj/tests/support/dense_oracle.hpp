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
 * Test-only dense oracle: gates as explicit matrices lifted to the full
 * register by Kronecker products, applied by plain matrix-vector products.
 * Deliberately independent of the simulator's gate kernels; the only shared
 * convention is that wire 0 is the most significant bit.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

inline Mat identity(int dim) { return Mat::Identity(dim, dim); }

inline Mat pauli(char p) {
    Mat m(2, 2);
    switch (p) {
    case 'I':
        m << 1, 0, 0, 1;
        break;
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, cplx(0, -1), cplx(0, 1), 0;
        break;
    default:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

inline Mat hadamard() {
    Mat m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

inline Mat rx(double a) {
    Mat m(2, 2);
    m << std::cos(a / 2), cplx(0, -std::sin(a / 2)), cplx(0, -std::sin(a / 2)),
        std::cos(a / 2);
    return m;
}

inline Mat ry(double a) {
    Mat m(2, 2);
    m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
    return m;
}

inline Mat rz(double a) {
    Mat m(2, 2);
    m << std::exp(cplx(0, -a / 2)), 0, 0, std::exp(cplx(0, a / 2));
    return m;
}

inline Mat rot(double a, double b, double c) { return rz(c) * ry(b) * rz(a); }

/// Lifts a single-qubit matrix to the full register (wire 0 = leftmost factor).
inline Mat lift_single(const Mat &g, int wire, int n_qubits) {
    Mat acc = identity(1);
    for (int w = 0; w < n_qubits; ++w) {
        acc = kron(acc, w == wire ? g : identity(2));
    }
    return acc;
}

/// Pauli word lifted to the full register; word[k] acts on wires[k].
inline Mat lift_word(const std::string &word, const std::vector<int> &wires,
                     int n_qubits) {
    std::string full(n_qubits, 'I');
    for (std::size_t k = 0; k < wires.size(); ++k) {
        full[wires[k]] = word[k];
    }
    Mat acc = identity(1);
    for (char c : full) {
        acc = kron(acc, pauli(c));
    }
    return acc;
}

inline Mat pauli_rotation(const std::string &word,
                          const std::vector<int> &wires, double angle,
                          int n_qubits) {
    const Mat p = lift_word(word, wires, n_qubits);
    const int dim = 1 << n_qubits;
    return std::cos(angle / 2) * identity(dim) -
           cplx(0, 1) * std::sin(angle / 2) * p;
}

/// Controlled gate: |0><0| (x) I + |1><1| (x) G with explicit wire positions.
inline Mat controlled(const Mat &g, int control, int target, int n_qubits) {
    Mat p0(2, 2), p1(2, 2);
    p0 << 1, 0, 0, 0;
    p1 << 0, 0, 0, 1;
    Mat keep = identity(1), act = identity(1);
    for (int w = 0; w < n_qubits; ++w) {
        if (w == control) {
            keep = kron(keep, p0);
            act = kron(act, p1);
        } else if (w == target) {
            keep = kron(keep, identity(2));
            act = kron(act, g);
        } else {
            keep = kron(keep, identity(2));
            act = kron(act, identity(2));
        }
    }
    return keep + act;
}

inline Mat cnot(int control, int target, int n_qubits) {
    return controlled(pauli('X'), control, target, n_qubits);
}

inline Mat cz(int control, int target, int n_qubits) {
    return controlled(pauli('Z'), control, target, n_qubits);
}

inline Vec ground_state(int n_qubits) {
    Vec v = Vec::Zero(1 << n_qubits);
    v(0) = 1.0;
    return v;
}

/// Partial trace onto one wire done by index bookkeeping over the dense ket.
inline Mat reduced_one_qubit(const Vec &psi, int wire, int n_qubits) {
    Mat rho = Mat::Zero(2, 2);
    const int dim = 1 << n_qubits;
    const int bit = 1 << (n_qubits - 1 - wire);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if ((i & ~bit) != (j & ~bit)) {
                continue;
            }
            const int a = (i & bit) ? 1 : 0;
            const int b = (j & bit) ? 1 : 0;
            rho(a, b) += psi(i) * std::conj(psi(j));
        }
    }
    return rho;
}

} // namespace oracle
