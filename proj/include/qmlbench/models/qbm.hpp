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
 * Quantum Boltzmann machine: the input is encoded into the couplings of a
 * d-qubit Hamiltonian whose exact Gibbs state is measured with a mean-Z
 * observable over the visible qubits. The separable variant drops the ZZ
 * couplings, making the thermal state a product of single-qubit states.
 *
 * The Hamiltonian weights enter through a matrix exponential where the
 * two-term shift rule does not apply, so training uses central finite
 * differences (h = 1e-4) over the batch loss.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qmlbench/autodiff/trainer.hpp"
#include "qmlbench/models/circuit_models.hpp"
#include "qmlbench/models/classifier.hpp"
#include "qmlbench/sim/density_matrix.hpp"

namespace qmlbench::models {

class QuantumBoltzmannMachineModel : public AngleScaledModel {
  public:
    static constexpr int kMaxQbmQubits = 10;
    static constexpr double kFdStep = 1e-4;

    QuantumBoltzmannMachineModel(ModelSpec spec, bool separable)
        : AngleScaledModel(std::move(spec)), separable_(separable) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        fit_scaler(x);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x71626dULL));
        params_.clear();
        detail::fill_small_normal(rng, params_,
                                  static_cast<int>(param_count_));

        const Eigen::MatrixXd xp = preprocess_all(x);
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                auto batch_loss = [&](const std::vector<double> &q) {
                    double loss = 0.0;
                    for (int idx : batch) {
                        loss += sample_loss(xp.row(idx).transpose(), y[idx], q);
                    }
                    return loss / batch.size();
                };
                std::vector<double> probe = p;
                for (std::size_t k = 0; k < p.size(); ++k) {
                    const double orig = probe[k];
                    probe[k] = orig + kFdStep;
                    const double plus = batch_loss(probe);
                    probe[k] = orig - kFdStep;
                    const double minus = batch_loss(probe);
                    probe[k] = orig;
                    grad[k] = (plus - minus) / (2.0 * kFdStep);
                }
                return batch_loss(p);
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(observable_value(preprocess(x), params_));
    }

    /// <O> = (1/n_vis) sum of visible <Z_j> under the Gibbs state.
    double observable_value(const Eigen::VectorXd &xp,
                            const std::vector<double> &p) const {
        if (separable_) {
            double total = 0.0;
            for (int j = 0; j < n_vis_; ++j) {
                total += single_qubit_z(j, xp, p);
            }
            return total / n_vis_;
        }
        const auto rho =
            sim::gibbs_state(hamiltonian(xp, p), temperature_);
        return rho.expectation(sim::Observable::mean_z(n_vis_, n_));
    }

    /// Full Pauli-sum Hamiltonian (ZZ terms omitted in the separable model).
    sim::Observable hamiltonian(const Eigen::VectorXd &xp,
                                const std::vector<double> &p) const {
        std::vector<sim::PauliTerm> terms;
        for (int j = 0; j < n_; ++j) {
            std::string w(n_, 'I');
            w[j] = 'Z';
            terms.push_back({dot_z(j, xp, p), w});
            w[j] = 'X';
            terms.push_back({dot_x(j, xp, p), std::move(w)});
        }
        if (!separable_) {
            int pair = 0;
            for (int j = 0; j < n_; ++j) {
                for (int k = j + 1; k < n_; ++k, ++pair) {
                    std::string w(n_, 'I');
                    w[j] = 'Z';
                    w[k] = 'Z';
                    terms.push_back({dot_zz(pair, xp, p), std::move(w)});
                }
            }
        }
        return sim::Observable(std::move(terms));
    }

    double temperature() const { return temperature_; }
    int n_visible() const { return n_vis_; }
    std::size_t parameter_count() const { return param_count_; }

    double sample_loss(const Eigen::VectorXd &xp, int label,
                       const std::vector<double> &p) const {
        const double prob = (1.0 + observable_value(xp, p)) / 2.0;
        return label == 1 ? -std::log(std::max(prob, 1e-12))
                          : -std::log(std::max(1.0 - prob, 1e-12));
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", n_},
                {"separable", separable_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

  private:
    void build(int d) {
        n_ = d;
        require(n_ <= kMaxQbmQubits && n_ <= spec_.max_qubits,
                "QuantumBoltzmannMachine: register of ", n_,
                " qubits exceeds the cap of ",
                std::min(kMaxQbmQubits, spec_.max_qubits));
        temperature_ = spec_.hp_double("temperature", 1.0);
        require(temperature_ > 0.0,
                "QuantumBoltzmannMachine: temperature must be positive");
        const std::string vis = spec_.hp_string("visible_qubits", "single");
        n_vis_ = vis == "single" ? 1
                 : vis == "half" ? (n_ + 1) / 2
                                 : n_;
        require(vis == "single" || vis == "half" || vis == "all",
                "QuantumBoltzmannMachine: unknown visible_qubits '", vis, "'");
        n_pairs_ = separable_ ? 0 : n_ * (n_ - 1) / 2;
        param_count_ = static_cast<std::size_t>(n_ + n_ + n_pairs_) * n_;
    }

    // parameter blocks: [theta_Z (n rows of d), theta_X, theta_ZZ (pairs)]
    double dot_z(int j, const Eigen::VectorXd &xp,
                 const std::vector<double> &p) const {
        return dot_block(j, xp, p, 0);
    }
    double dot_x(int j, const Eigen::VectorXd &xp,
                 const std::vector<double> &p) const {
        return dot_block(j, xp, p, n_);
    }
    double dot_zz(int pair, const Eigen::VectorXd &xp,
                  const std::vector<double> &p) const {
        return dot_block(pair, xp, p, 2 * n_);
    }
    double dot_block(int row, const Eigen::VectorXd &xp,
                     const std::vector<double> &p, int block) const {
        const double *base = p.data() + (block + row) * n_;
        double acc = 0.0;
        for (int i = 0; i < n_; ++i) {
            acc += base[i] * xp(i);
        }
        return acc;
    }

    /// <Z_j> of the 2x2 Gibbs state of a Z + b X (separable path).
    double single_qubit_z(int j, const Eigen::VectorXd &xp,
                          const std::vector<double> &p) const {
        const double a = dot_z(j, xp, p);
        const double b = dot_x(j, xp, p);
        const double r = std::sqrt(a * a + b * b);
        if (r == 0.0) {
            return 0.0;
        }
        // eigenvalues +-r; <Z> = -(a/r) tanh(r/T)
        return -(a / r) * std::tanh(r / temperature_);
    }

    bool separable_ = false;
    int n_ = 0;
    int n_vis_ = 1;
    int n_pairs_ = 0;
    double temperature_ = 1.0;
    std::size_t param_count_ = 0;
    std::vector<double> params_;
};

} // namespace qmlbench::models
