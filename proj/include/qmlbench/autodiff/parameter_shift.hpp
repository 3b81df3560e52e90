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
 * Exact gradients of circuit expectations via the two-term parameter-shift
 * rule, with a finite-difference fallback for gates whose generator does not
 * have the required +-1/2 spectrum (controlled rotations).
 *
 * Gate angles are affine in the trainable parameters, so the gradient w.r.t.
 * a parameter sums the shift-rule derivative of every gate occurrence times
 * the occurrence's (possibly feature-dependent) linear coefficient.
 */
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "qmlbench/sim/circuit.hpp"
#include "qmlbench/sim/observable.hpp"

namespace qmlbench::autodiff {

/// Single-qubit rotations and Pauli-word rotations have generators with
/// eigenvalues +-1/2, which is what the two-term rule requires.
inline bool shift_eligible(sim::GateKind kind) {
    switch (kind) {
    case sim::GateKind::RX:
    case sim::GateKind::RY:
    case sim::GateKind::RZ:
    case sim::GateKind::Rot:
    case sim::GateKind::PauliRot:
        return true;
    default:
        return false;
    }
}

struct GradientResult {
    std::vector<double> grad;
    std::vector<bool> shifted; // false where finite differences were used
};

namespace detail {

inline std::vector<double>
evaluate_all(const sim::Circuit &c, std::span<const sim::Observable> obs,
             std::span<const double> x, std::span<const double> theta,
             const sim::AngleShift &shift = {},
             const sim::StateVector *initial = nullptr) {
    sim::StateVector state = initial ? *initial : sim::StateVector(c.n_qubits());
    sim::apply_circuit_to(state, c, x, theta, shift);
    std::vector<double> out(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        out[i] = sim::expectation(state, obs[i]);
    }
    return out;
}

} // namespace detail

/// Jacobian d<obs_i>/d(theta_k), shape n_obs x n_params. `shifted[k]` reports
/// whether every contribution to column k used the shift rule.
struct Jacobian {
    Eigen::MatrixXd d_params;
    std::vector<bool> shifted;
};

inline Jacobian parameter_shift_jacobian(const sim::Circuit &c,
                                         std::span<const sim::Observable> obs,
                                         std::span<const double> x,
                                         std::span<const double> theta,
                                         double fd_step = 1e-6,
                                         const sim::StateVector *initial = nullptr) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    Jacobian jac;
    jac.d_params = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(obs.size()),
                                         c.n_params());
    jac.shifted.assign(c.n_params(), true);

    const auto &ops = c.ops();
    for (int op_idx = 0; op_idx < static_cast<int>(ops.size()); ++op_idx) {
        const auto &op = ops[op_idx];
        for (int a_idx = 0; a_idx < static_cast<int>(op.angles.size());
             ++a_idx) {
            const auto &expr = op.angles[a_idx];
            if (!expr.depends_on_params()) {
                continue;
            }
            const bool eligible = shift_eligible(op.kind);
            const double delta = eligible ? half_pi : fd_step;
            const auto plus = detail::evaluate_all(
                c, obs, x, theta, sim::AngleShift{op_idx, a_idx, delta},
                initial);
            const auto minus = detail::evaluate_all(
                c, obs, x, theta, sim::AngleShift{op_idx, a_idx, -delta},
                initial);
            const double denom = eligible ? 2.0 : 2.0 * fd_step;
            std::vector<int> params;
            for (const auto &term : expr.terms) {
                if (term.param >= 0 &&
                    std::find(params.begin(), params.end(), term.param) ==
                        params.end()) {
                    params.push_back(term.param);
                }
            }
            for (int p : params) {
                const double coeff = expr.param_coeff(p, x);
                if (coeff == 0.0) {
                    continue;
                }
                if (!eligible) {
                    jac.shifted[p] = false;
                }
                for (std::size_t i = 0; i < obs.size(); ++i) {
                    jac.d_params(static_cast<Eigen::Index>(i), p) +=
                        coeff * (plus[i] - minus[i]) / denom;
                }
            }
        }
    }
    return jac;
}

/// Jacobian d<obs_i>/d(x_f) by the same per-occurrence shift logic. Used by
/// models that backpropagate through the data-encoding gates.
inline Eigen::MatrixXd
feature_shift_jacobian(const sim::Circuit &c,
                       std::span<const sim::Observable> obs,
                       std::span<const double> x,
                       std::span<const double> theta, double fd_step = 1e-6) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(obs.size()), c.n_features());

    const auto &ops = c.ops();
    for (int op_idx = 0; op_idx < static_cast<int>(ops.size()); ++op_idx) {
        const auto &op = ops[op_idx];
        for (int a_idx = 0; a_idx < static_cast<int>(op.angles.size());
             ++a_idx) {
            const auto &expr = op.angles[a_idx];
            std::vector<int> features;
            for (const auto &t : expr.terms) {
                for (int f : {t.feature, t.feature2}) {
                    if (f >= 0 &&
                        std::find(features.begin(), features.end(), f) ==
                            features.end()) {
                        features.push_back(f);
                    }
                }
            }
            if (features.empty()) {
                continue;
            }
            const bool eligible = shift_eligible(op.kind);
            const double delta = eligible ? half_pi : fd_step;
            const auto plus = detail::evaluate_all(
                c, obs, x, theta, sim::AngleShift{op_idx, a_idx, delta});
            const auto minus = detail::evaluate_all(
                c, obs, x, theta, sim::AngleShift{op_idx, a_idx, -delta});
            const double denom = eligible ? 2.0 : 2.0 * fd_step;
            for (int f : features) {
                const double coeff = expr.feature_coeff(f, x, theta);
                if (coeff == 0.0) {
                    continue;
                }
                for (std::size_t i = 0; i < obs.size(); ++i) {
                    jac(static_cast<Eigen::Index>(i), f) +=
                        coeff * (plus[i] - minus[i]) / denom;
                }
            }
        }
    }
    return jac;
}

/// d<obs>/d(theta) for a single observable.
inline GradientResult parameter_shift_grad(const sim::Circuit &c,
                                           const sim::Observable &obs,
                                           std::span<const double> x,
                                           std::span<const double> theta) {
    const auto jac = parameter_shift_jacobian(c, std::span(&obs, 1), x, theta);
    GradientResult res;
    res.grad.resize(c.n_params());
    for (Eigen::Index k = 0; k < jac.d_params.cols(); ++k) {
        res.grad[k] = jac.d_params(0, k);
    }
    res.shifted = jac.shifted;
    return res;
}

} // namespace qmlbench::autodiff
