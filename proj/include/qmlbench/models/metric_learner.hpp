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
 * Quantum metric learner: a trainable QAOA-style embedding on d + 1 qubits
 * optimized so states from different classes become distinguishable. The
 * cost over sampled pairs is
 *   1 - sum_AB F + 0.5 sum_AA F + 0.5 sum_BB F
 * with F the embedded-state fidelity; prediction compares the mean fidelity
 * against stored reference batches of both classes.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "qmlbench/autodiff/parameter_shift.hpp"
#include "qmlbench/autodiff/trainer.hpp"
#include "qmlbench/models/circuit_models.hpp"
#include "qmlbench/models/classifier.hpp"
#include "qmlbench/sim/templates.hpp"

namespace qmlbench::models {

class QuantumMetricLearnerModel : public AngleScaledModel {
  public:
    static constexpr int kPairBatch = 16;     // sampled pairs per set
    static constexpr int kReferenceBatch = 32; // stored points per class

    explicit QuantumMetricLearnerModel(ModelSpec spec)
        : AngleScaledModel(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        fit_scaler(x);
        build(static_cast<int>(x.cols()));

        std::vector<int> pos, neg;
        for (std::size_t i = 0; i < y.size(); ++i) {
            (y[i] == 1 ? pos : neg).push_back(static_cast<int>(i));
        }
        require(!pos.empty() && !neg.empty(),
                "QuantumMetricLearner: both classes need at least one "
                "training point");

        Rng rng(mix_seed(spec_.seed, 0x6d6cULL));
        params_.clear();
        detail::fill_uniform_angles(rng, params_, circuit_.n_params());

        const Eigen::MatrixXd xp = preprocess_all(x);
        Rng pair_rng(mix_seed(spec_.seed, 0x706172ULL));
        auto draw = [&](const std::vector<int> &bucket) {
            return bucket[pair_rng.uniform_index(bucket.size())];
        };

        autodiff::AdamState adam(params_.size(),
                                 spec_.hp_double("learning_rate", 0.01));
        autodiff::LossWindow window;
        info_ = TrainInfo{};
        info_.converged = false;
        for (long step = 0; step < spec_.max_steps; ++step) {
            std::vector<double> grad(params_.size(), 0.0);
            double cost = 1.0;
            for (int b = 0; b < kPairBatch; ++b) {
                cost -= fidelity_and_grad(xp.row(draw(pos)).transpose(),
                                          xp.row(draw(neg)).transpose(),
                                          params_, grad, -1.0);
                cost += 0.5 * fidelity_and_grad(
                                  xp.row(draw(pos)).transpose(),
                                  xp.row(draw(pos)).transpose(), params_,
                                  grad, 0.5);
                cost += 0.5 * fidelity_and_grad(
                                  xp.row(draw(neg)).transpose(),
                                  xp.row(draw(neg)).transpose(), params_,
                                  grad, 0.5);
            }
            if (!std::isfinite(cost)) {
                throw TrainingError("QuantumMetricLearner: non-finite cost");
            }
            adam_step(adam, params_, grad);
            info_.loss_history.push_back(cost);
            window.push(cost);
            info_.steps = step + 1;
            if (window.has_converged()) {
                info_.converged = true;
                break;
            }
        }

        // reference batches for prediction, drawn once
        Rng ref_rng(mix_seed(spec_.seed, 0x726566ULL));
        auto sample_reference = [&](std::vector<int> bucket) {
            ref_rng.shuffle(bucket);
            if (static_cast<int>(bucket.size()) > kReferenceBatch) {
                bucket.resize(kReferenceBatch);
            }
            Eigen::MatrixXd out(bucket.size(), xp.cols());
            for (std::size_t i = 0; i < bucket.size(); ++i) {
                out.row(static_cast<Eigen::Index>(i)) = xp.row(bucket[i]);
            }
            return out;
        };
        ref_pos_ = sample_reference(pos);
        ref_neg_ = sample_reference(neg);
    }

    /// Mean fidelity to the positive references minus the negative ones.
    double decision(const Eigen::VectorXd &x) const {
        const Eigen::VectorXd xp = preprocess(x);
        const auto psi = embed(xp, params_);
        double f_pos = 0.0, f_neg = 0.0;
        for (Eigen::Index i = 0; i < ref_pos_.rows(); ++i) {
            f_pos += sim::state_overlap(
                embed(ref_pos_.row(i).transpose(), params_), psi);
        }
        for (Eigen::Index i = 0; i < ref_neg_.rows(); ++i) {
            f_neg += sim::state_overlap(
                embed(ref_neg_.row(i).transpose(), params_), psi);
        }
        return f_pos / ref_pos_.rows() - f_neg / ref_neg_.rows();
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(decision(x));
    }

    int n_qubits() const { return circuit_.n_qubits(); }
    const sim::Circuit &circuit() const { return circuit_; }
    std::size_t parameter_count() const { return params_.size(); }

    /// Pair-cost contribution used in the gradient-oracle suite: adds
    /// weight * dF/dtheta into grad and returns F(xa, xb).
    double fidelity_and_grad(const Eigen::VectorXd &xa,
                             const Eigen::VectorXd &xb,
                             const std::vector<double> &p,
                             std::vector<double> &grad, double weight) const {
        const auto psi_a = embed(xa, p);
        const auto psi_b = embed(xb, p);
        const double fidelity = sim::state_overlap(psi_a, psi_b);
        constexpr double half_pi = std::numbers::pi / 2.0;

        auto accumulate_side = [&](const Eigen::VectorXd &side_x,
                                   const sim::StateVector &other) {
            const std::vector<double> feats(side_x.data(),
                                            side_x.data() + side_x.size());
            const auto &ops = circuit_.ops();
            for (int op_idx = 0; op_idx < static_cast<int>(ops.size());
                 ++op_idx) {
                const auto &op = ops[op_idx];
                for (int a_idx = 0;
                     a_idx < static_cast<int>(op.angles.size()); ++a_idx) {
                    const auto &expr = op.angles[a_idx];
                    if (!expr.depends_on_params()) {
                        continue;
                    }
                    const auto plus = sim::apply_circuit(
                        circuit_, feats, p,
                        sim::AngleShift{op_idx, a_idx, half_pi});
                    const auto minus = sim::apply_circuit(
                        circuit_, feats, p,
                        sim::AngleShift{op_idx, a_idx, -half_pi});
                    const double df = (sim::state_overlap(plus, other) -
                                       sim::state_overlap(minus, other)) /
                                      2.0;
                    for (const auto &term : expr.terms) {
                        if (term.param < 0) {
                            continue;
                        }
                        grad[term.param] +=
                            weight * df * expr.param_coeff(term.param, feats);
                    }
                }
            }
        };
        accumulate_side(xa, psi_b);
        accumulate_side(xb, psi_a);
        return fidelity;
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"params", detail::vector_to_json(params_)},
                {"ref_pos", detail::eigen_to_json(ref_pos_)},
                {"ref_neg", detail::eigen_to_json(ref_neg_)}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
        ref_pos_ = detail::eigen_from_json(j.at("ref_pos"));
        ref_neg_ = detail::eigen_from_json(j.at("ref_neg"));
    }

    sim::StateVector embed(const Eigen::VectorXd &xp,
                           const std::vector<double> &p) const {
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        return sim::apply_circuit(circuit_, feats, p);
    }

  private:
    void build(int d) {
        d_ = d;
        const int n = d + 1;
        require(n <= spec_.max_qubits, "QuantumMetricLearner: register of ", n,
                " qubits exceeds the cap of ", spec_.max_qubits);
        circuit_ = sim::Circuit(n, d);
        sim::append_qaoa_embedding(circuit_,
                                   static_cast<int>(spec_.hp_long("n_layers", 1)),
                                   spec_.flags.no_entanglement);
    }

    int d_ = 0;
    sim::Circuit circuit_{2, 1};
    std::vector<double> params_;
    Eigen::MatrixXd ref_pos_, ref_neg_;
};

} // namespace qmlbench::models
