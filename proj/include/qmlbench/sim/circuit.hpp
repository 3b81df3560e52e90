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
 * Circuits as ordered gate lists with symbolic angle bindings.
 *
 * A gate angle is a sum of terms, each term a coefficient optionally
 * multiplied by one or two feature values and/or one trainable parameter.
 * This covers every binding used by the models: literals, plain feature or
 * parameter angles, feature products (x_i * x_j), and the re-uploading form
 * x_j * w_k + theta_k. Gradients read the same structure to find which
 * parameters enter which gate and with what (feature dependent) coefficient.
 */
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/sim/state_vector.hpp"

namespace qmlbench::sim {

enum class GateKind { RX, RY, RZ, Rot, H, X, CNOT, CZ, CRot, PauliRot };

struct AngleTerm {
    double coeff = 1.0;
    int feature = -1;  // multiply by x[feature] when >= 0
    int feature2 = -1; // multiply by x[feature2] when >= 0
    int param = -1;    // multiply by theta[param] when >= 0
};

struct AngleExpr {
    std::vector<AngleTerm> terms;

    static AngleExpr literal(double v) {
        return {{AngleTerm{v, -1, -1, -1}}};
    }
    static AngleExpr feature(int i, double scale = 1.0) {
        return {{AngleTerm{scale, i, -1, -1}}};
    }
    static AngleExpr param(int k, double scale = 1.0) {
        return {{AngleTerm{scale, -1, -1, k}}};
    }
    static AngleExpr feature_product(int i, int j, double scale = 1.0) {
        return {{AngleTerm{scale, i, j, -1}}};
    }
    /// x[f] * theta[p_scale] + theta[p_offset]; the re-uploading gate angle.
    static AngleExpr scaled_feature_plus_param(int f, int p_scale,
                                               int p_offset) {
        return {{AngleTerm{1.0, f, -1, p_scale}, AngleTerm{1.0, -1, -1, p_offset}}};
    }

    double value(std::span<const double> x,
                 std::span<const double> theta) const {
        double v = 0.0;
        for (const auto &t : terms) {
            double term = t.coeff;
            if (t.feature >= 0) {
                term *= x[t.feature];
            }
            if (t.feature2 >= 0) {
                term *= x[t.feature2];
            }
            if (t.param >= 0) {
                term *= theta[t.param];
            }
            v += term;
        }
        return v;
    }

    /// d(angle)/d(theta[p]) at the given features.
    double param_coeff(int p, std::span<const double> x) const {
        double c = 0.0;
        for (const auto &t : terms) {
            if (t.param != p) {
                continue;
            }
            double term = t.coeff;
            if (t.feature >= 0) {
                term *= x[t.feature];
            }
            if (t.feature2 >= 0) {
                term *= x[t.feature2];
            }
            c += term;
        }
        return c;
    }

    /// d(angle)/d(x[f]); product terms x_f^2 differentiate to 2 x_f.
    double feature_coeff(int f, std::span<const double> x,
                         std::span<const double> theta) const {
        double c = 0.0;
        for (const auto &t : terms) {
            double factor = t.coeff;
            if (t.param >= 0) {
                factor *= theta[t.param];
            }
            if (t.feature == f && t.feature2 == f) {
                c += 2.0 * factor * x[f];
            } else if (t.feature == f) {
                c += factor * (t.feature2 >= 0 ? x[t.feature2] : 1.0);
            } else if (t.feature2 == f) {
                c += factor * (t.feature >= 0 ? x[t.feature] : 1.0);
            }
        }
        return c;
    }

    bool depends_on_params() const {
        for (const auto &t : terms) {
            if (t.param >= 0) {
                return true;
            }
        }
        return false;
    }
};

struct GateOp {
    GateKind kind;
    std::vector<int> wires;
    std::vector<AngleExpr> angles; // 1 for RX/RY/RZ/PauliRot, 3 for Rot/CRot
    std::string generator;         // PauliRot only; length == wires.size()
};

class Circuit {
  public:
    explicit Circuit(int n_qubits, int n_features = 0)
        : n_qubits_(n_qubits), n_features_(n_features) {
        require(n_qubits >= 1, "Circuit: need at least one qubit");
        require(n_features >= 0, "Circuit: negative feature count");
    }

    int n_qubits() const { return n_qubits_; }
    int n_features() const { return n_features_; }
    int n_params() const { return n_params_; }
    const std::vector<GateOp> &ops() const { return ops_; }

    /// Reserves `count` fresh trainable parameter slots, returns base index.
    int add_params(int count) {
        const int base = n_params_;
        n_params_ += count;
        return base;
    }

    void rx(int wire, AngleExpr a) { push_rotation(GateKind::RX, wire, std::move(a)); }
    void ry(int wire, AngleExpr a) { push_rotation(GateKind::RY, wire, std::move(a)); }
    void rz(int wire, AngleExpr a) { push_rotation(GateKind::RZ, wire, std::move(a)); }

    /// Rot(a, b, c) = RZ(c) RY(b) RZ(a); a is applied first.
    void rot(int wire, AngleExpr a, AngleExpr b, AngleExpr c) {
        GateOp op{GateKind::Rot, {wire}, {std::move(a), std::move(b), std::move(c)}, {}};
        push(std::move(op));
    }

    void h(int wire) { push(GateOp{GateKind::H, {wire}, {}, {}}); }
    void x(int wire) { push(GateOp{GateKind::X, {wire}, {}, {}}); }
    void cnot(int control, int target) {
        push(GateOp{GateKind::CNOT, {control, target}, {}, {}});
    }
    void cz(int a, int b) { push(GateOp{GateKind::CZ, {a, b}, {}, {}}); }

    void crot(int control, int target, AngleExpr a, AngleExpr b, AngleExpr c) {
        push(GateOp{GateKind::CRot,
                    {control, target},
                    {std::move(a), std::move(b), std::move(c)},
                    {}});
    }

    void pauli_rot(std::vector<int> wires, std::string generator, AngleExpr a) {
        require(generator.size() == wires.size(), "PauliRot: generator length ",
                generator.size(), " != wire count ", wires.size());
        GateOp op{GateKind::PauliRot, std::move(wires), {std::move(a)},
                  std::move(generator)};
        push(std::move(op));
    }

    /// True when the gate leaves product states product (acts on one wire).
    static bool is_entangling(const GateOp &op) {
        return op.wires.size() > 1;
    }

    bool has_entanglers() const {
        for (const auto &op : ops_) {
            if (is_entangling(op)) {
                return true;
            }
        }
        return false;
    }

  private:
    void push_rotation(GateKind kind, int wire, AngleExpr a) {
        push(GateOp{kind, {wire}, {std::move(a)}, {}});
    }

    void push(GateOp op) {
        for (std::size_t i = 0; i < op.wires.size(); ++i) {
            require(op.wires[i] >= 0 && op.wires[i] < n_qubits_, "gate wire ",
                    op.wires[i], " out of range for ", n_qubits_, " qubits");
            for (std::size_t j = i + 1; j < op.wires.size(); ++j) {
                require(op.wires[i] != op.wires[j],
                        "gate wires must be distinct (wire ", op.wires[i],
                        " repeated)");
            }
        }
        for (const auto &a : op.angles) {
            for (const auto &t : a.terms) {
                require(t.feature < n_features_, "feature index ", t.feature,
                        " out of range (circuit has ", n_features_,
                        " features)");
                require(t.feature2 < n_features_, "feature index ", t.feature2,
                        " out of range (circuit has ", n_features_,
                        " features)");
                require(t.param < n_params_, "parameter index ", t.param,
                        " out of range (circuit has ", n_params_,
                        " parameters)");
            }
        }
        ops_.push_back(std::move(op));
    }

    int n_qubits_;
    int n_features_;
    int n_params_ = 0;
    std::vector<GateOp> ops_;
};

namespace detail {

inline std::array<cplx, 4> rx_matrix(double a) {
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    return {cplx{c, 0}, cplx{0, -s}, cplx{0, -s}, cplx{c, 0}};
}
inline std::array<cplx, 4> ry_matrix(double a) {
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
}
inline std::array<cplx, 4> rz_matrix(double a) {
    return {std::exp(cplx{0, -a / 2}), cplx{0, 0}, cplx{0, 0},
            std::exp(cplx{0, a / 2})};
}

inline std::array<cplx, 4> rot_matrix(double a, double b, double c) {
    // RZ(c) * RY(b) * RZ(a)
    const auto za = rz_matrix(a), yb = ry_matrix(b), zc = rz_matrix(c);
    auto mul = [](const std::array<cplx, 4> &m, const std::array<cplx, 4> &n) {
        return std::array<cplx, 4>{
            m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3],
            m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]};
    };
    return mul(zc, mul(yb, za));
}

} // namespace detail

/// Applies one resolved gate to the state.
inline void apply_gate(StateVector &state, const GateOp &op,
                       std::span<const double> resolved_angles) {
    switch (op.kind) {
    case GateKind::RX:
        state.apply_single(detail::rx_matrix(resolved_angles[0]), op.wires[0]);
        break;
    case GateKind::RY:
        state.apply_single(detail::ry_matrix(resolved_angles[0]), op.wires[0]);
        break;
    case GateKind::RZ:
        state.apply_single(detail::rz_matrix(resolved_angles[0]), op.wires[0]);
        break;
    case GateKind::Rot:
        state.apply_single(detail::rot_matrix(resolved_angles[0],
                                              resolved_angles[1],
                                              resolved_angles[2]),
                           op.wires[0]);
        break;
    case GateKind::H:
        state.apply_h(op.wires[0]);
        break;
    case GateKind::X:
        state.apply_x(op.wires[0]);
        break;
    case GateKind::CNOT:
        state.apply_cnot(op.wires[0], op.wires[1]);
        break;
    case GateKind::CZ:
        state.apply_cz(op.wires[0], op.wires[1]);
        break;
    case GateKind::CRot: {
        const auto r = detail::rot_matrix(resolved_angles[0],
                                          resolved_angles[1],
                                          resolved_angles[2]);
        const cplx one{1, 0}, zero{0, 0};
        // |control target>; rotation applied on the target when control = 1
        state.apply_two({one, zero, zero, zero,     //
                         zero, one, zero, zero,     //
                         zero, zero, r[0], r[1],    //
                         zero, zero, r[2], r[3]},
                        op.wires[0], op.wires[1]);
        break;
    }
    case GateKind::PauliRot:
        state.apply_pauli_rotation(op.generator, op.wires, resolved_angles[0]);
        break;
    }
}

struct AngleShift {
    int op_index = -1;
    int angle_index = 0;
    double delta = 0.0;
};

/// Runs the circuit's gates on an existing state. At most one gate angle may
/// be shifted by `shift` (used by the parameter-shift rule).
inline void apply_circuit_to(StateVector &state, const Circuit &c,
                             std::span<const double> x,
                             std::span<const double> theta,
                             const AngleShift &shift = {}) {
    require(static_cast<int>(x.size()) == c.n_features(),
            "apply_circuit: expected ", c.n_features(), " features, got ",
            x.size());
    require(static_cast<int>(theta.size()) == c.n_params(),
            "apply_circuit: expected ", c.n_params(), " parameters, got ",
            theta.size());
    require(state.n_qubits() == c.n_qubits(),
            "apply_circuit: state register has ", state.n_qubits(),
            " qubits, circuit expects ", c.n_qubits());
    std::vector<double> angles;
    const auto &ops = c.ops();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto &op = ops[i];
        angles.resize(op.angles.size());
        for (std::size_t k = 0; k < op.angles.size(); ++k) {
            angles[k] = op.angles[k].value(x, theta);
            if (static_cast<int>(i) == shift.op_index &&
                static_cast<int>(k) == shift.angle_index) {
                angles[k] += shift.delta;
            }
        }
        apply_gate(state, op, angles);
    }
}

/// Runs the circuit on |0...0> with bound features and parameters.
inline StateVector apply_circuit(const Circuit &c, std::span<const double> x,
                                 std::span<const double> theta,
                                 const AngleShift &shift = {}) {
    StateVector state(c.n_qubits());
    apply_circuit_to(state, c, x, theta, shift);
    return state;
}

} // namespace qmlbench::sim
