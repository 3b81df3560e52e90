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
 * Gradient-trained circuit classifiers. Circuit layouts, losses and
 * prediction rules for each model are documented in docs/model_catalog.md.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "qmlbench/autodiff/parameter_shift.hpp"
#include "qmlbench/autodiff/trainer.hpp"
#include "qmlbench/classical/scaler.hpp"
#include "qmlbench/models/classifier.hpp"
#include "qmlbench/sim/observable.hpp"
#include "qmlbench/sim/templates.hpp"

namespace qmlbench::models {

namespace detail {

inline void fill_uniform_angles(Rng &rng, std::vector<double> &out, int count) {
    for (int i = 0; i < count; ++i) {
        out.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
}

inline void fill_small_normal(Rng &rng, std::vector<double> &out, int count) {
    for (int i = 0; i < count; ++i) {
        out.push_back(rng.normal(0.0, 0.1));
    }
}

inline json vector_to_json(const std::vector<double> &v) { return json(v); }

inline std::vector<double> vector_from_json(const json &j) {
    return j.get<std::vector<double>>();
}

inline json eigen_to_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXd eigen_from_json(const json &j) {
    const auto rows = j.size();
    const auto cols = rows == 0 ? 0 : j[0].size();
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                j[i][c].get<double>();
        }
    }
    return m;
}

inline json angle_scaler_to_json(const classical::AngleScaler &s) {
    if (!s.fitted()) {
        return nullptr;
    }
    return {{"min", eigen_to_json(s.min())}, {"max", eigen_to_json(s.max())}};
}

inline void angle_scaler_from_json(const json &j, classical::AngleScaler &s) {
    if (j.is_null()) {
        return;
    }
    s.restore(eigen_from_json(j.at("min")).col(0),
              eigen_from_json(j.at("max")).col(0));
}

} // namespace detail

/// Base for models that scale features into [-pi/2, pi/2] before encoding.
class AngleScaledModel : public Classifier {
  public:
    using Classifier::Classifier;

  protected:
    void fit_scaler(const Eigen::MatrixXd &x) { scaler_.fit(x); }

    Eigen::VectorXd preprocess(const Eigen::VectorXd &x) const {
        return spec_.input_scale * scaler_.transform(x);
    }

    Eigen::MatrixXd preprocess_all(const Eigen::MatrixXd &x) const {
        return spec_.input_scale * scaler_.transform(x);
    }

    classical::AngleScaler scaler_;
};

// ---------------------------------------------------------------------------
// CircuitCentric: copies of amplitude-embedded input, strongly entangling
// variational block, sign(<Z_1> + bias), square loss.
// ---------------------------------------------------------------------------
class CircuitCentricModel : public Classifier {
  public:
    explicit CircuitCentricModel(ModelSpec spec)
        : Classifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        d_ = static_cast<int>(x.cols());
        build(d_);
        Rng rng(mix_seed(spec_.seed, 0x6363ULL));
        params_.clear();
        detail::fill_uniform_angles(rng, params_, circuit_.n_params());
        detail::fill_small_normal(rng, params_, 1); // bias

        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                const std::span theta(p.data(), circuit_.n_params());
                for (int idx : batch) {
                    const auto embedded = embed(x.row(idx).transpose());
                    const double f =
                        circuit_value(embedded, theta) + p.back();
                    const double r = f - y[idx];
                    loss += r * r;
                    const double w = 2.0 * r / batch.size();
                    const auto jac = autodiff::parameter_shift_jacobian(
                        circuit_, std::span(&obs_, 1), {}, theta, 1e-6,
                        &embedded);
                    for (int k = 0; k < circuit_.n_params(); ++k) {
                        grad[k] += w * jac.d_params(0, k);
                    }
                    grad.back() += w;
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    double decision(const Eigen::VectorXd &x) const {
        const std::span theta(params_.data(), circuit_.n_params());
        return circuit_value(embed(x), theta) + params_.back();
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(decision(x));
    }

    int n_qubits() const { return circuit_.n_qubits(); }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        d_ = j.at("d").get<int>();
        build(d_);
        params_ = detail::vector_from_json(j.at("params"));
    }

  private:
    void build(int d) {
        const int copies = static_cast<int>(spec_.hp_long("n_input_copies", 1));
        qubits_per_copy_ = std::max(
            1, static_cast<int>(std::ceil(std::log2(std::max(d, 2)))));
        const int n = copies * qubits_per_copy_;
        require(n <= spec_.max_qubits, "CircuitCentric: register of ", n,
                " qubits exceeds the cap of ", spec_.max_qubits);
        circuit_ = sim::Circuit(n, 0);
        sim::append_strongly_entangling(
            circuit_, static_cast<int>(spec_.hp_long("n_layers", 1)),
            spec_.flags.no_entanglement);
        obs_ = sim::Observable::z_on(0, n);
        copies_ = copies;
    }

    sim::StateVector embed(const Eigen::VectorXd &x) const {
        std::vector<double> values(x.data(), x.data() + x.size());
        const auto single = sim::amplitude_embed(values, qubits_per_copy_);
        if (copies_ == 1) {
            return single;
        }
        // Kronecker power of the embedded register.
        std::vector<sim::cplx> amps = single.amplitudes();
        for (int c = 1; c < copies_; ++c) {
            std::vector<sim::cplx> next(amps.size() * single.size());
            for (std::size_t i = 0; i < amps.size(); ++i) {
                for (std::size_t j = 0; j < single.size(); ++j) {
                    next[i * single.size() + j] = amps[i] * single[j];
                }
            }
            amps = std::move(next);
        }
        return sim::StateVector::from_amplitudes(circuit_.n_qubits(),
                                                 std::move(amps));
    }

    double circuit_value(const sim::StateVector &embedded,
                         std::span<const double> theta) const {
        sim::StateVector state = embedded;
        sim::apply_circuit_to(state, circuit_, {}, theta);
        return sim::expectation(state, obs_);
    }

    int d_ = 0;
    int copies_ = 1;
    int qubits_per_copy_ = 1;
    sim::Circuit circuit_{1, 0};
    sim::Observable obs_;
    std::vector<double> params_; // [circuit angles..., bias]
};

// ---------------------------------------------------------------------------
// DataReuploading: trainable per-layer angle embedding on ceil(d/3) qubits,
// fidelity loss against the class states |0> and |1>.
// ---------------------------------------------------------------------------
class DataReuploadingModel : public AngleScaledModel {
  public:
    explicit DataReuploadingModel(ModelSpec spec)
        : AngleScaledModel(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        fit_scaler(x);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x6472ULL));
        params_.clear();
        // theta rotation angles are uniform; omega scalings and the fidelity
        // weights are small classical weights
        detail::fill_uniform_angles(rng, params_, theta_count_);
        detail::fill_small_normal(rng, params_,
                                  static_cast<int>(total_params_) -
                                      theta_count_);

        const Eigen::MatrixXd xp = preprocess_all(x);
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    loss += sample_loss_grad(xp.row(idx).transpose(), y[idx],
                                             p, grad,
                                             1.0 / batch.size());
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    int predict(const Eigen::VectorXd &x) const override {
        const auto z = expectations(preprocess(x), params_);
        if (spec_.flags.no_cost) {
            return sign_class(z[0]);
        }
        double f0 = 0.0, f1 = 0.0;
        for (double zj : z) {
            f0 += (1.0 + zj) / 2.0;
            f1 += (1.0 - zj) / 2.0;
        }
        // F1 targets label +1; ties resolve to +1
        return f1 >= f0 ? 1 : -1;
    }

    int n_qubits() const { return circuit_.n_qubits(); }
    int n_circuit_params() const { return circuit_.n_params(); }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

    /// Loss and gradient of one preprocessed sample (exposed for the
    /// gradient-oracle suite).
    double sample_loss_grad(const Eigen::VectorXd &xp, int label,
                            const std::vector<double> &p,
                            std::vector<double> &grad, double weight) const {
        const std::span theta(p.data(), circuit_.n_params());
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        const auto jac = autodiff::parameter_shift_jacobian(
            circuit_, obs_, feats, theta);
        const auto state = sim::apply_circuit(circuit_, feats, theta);
        std::vector<double> z(obs_.size());
        for (std::size_t k = 0; k < obs_.size(); ++k) {
            z[k] = sim::expectation(state, obs_[k]);
        }
        const double y01 = label == 1 ? 1.0 : 0.0;

        if (spec_.flags.no_cost) {
            const double prob = 1.0 / (1.0 + std::exp(-z[0]));
            const double loss = label == 1 ? -std::log(std::max(prob, 1e-12))
                                           : -std::log(std::max(1 - prob, 1e-12));
            const double dz = prob - y01;
            for (int k = 0; k < circuit_.n_params(); ++k) {
                grad[k] += weight * dz * jac.d_params(0, k);
            }
            return loss;
        }

        const double *a0 = p.data() + circuit_.n_params();
        const double *a1 = a0 + n_max_;
        double *ga0 = grad.data() + circuit_.n_params();
        double *ga1 = ga0 + n_max_;
        double loss = 0.0;
        for (int j = 0; j < n_max_; ++j) {
            const double f0 = (1.0 + z[j]) / 2.0;
            const double f1 = (1.0 - z[j]) / 2.0;
            const double r0 = a0[j] * f0 - (1.0 - y01);
            const double r1 = a1[j] * f1 - y01;
            loss += r0 * r0 + r1 * r1;
            ga0[j] += weight * 2.0 * r0 * f0;
            ga1[j] += weight * 2.0 * r1 * f1;
            const double dz = r0 * a0[j] - r1 * a1[j];
            for (int k = 0; k < circuit_.n_params(); ++k) {
                grad[k] += weight * dz * jac.d_params(j, k);
            }
        }
        return loss;
    }

    std::size_t parameter_count() const { return total_params_; }
    const std::vector<double> &parameters() const { return params_; }
    std::vector<double> &mutable_parameters() { return params_; }

    std::vector<double> expectations(const Eigen::VectorXd &xp,
                                     const std::vector<double> &p) const {
        const std::span theta(p.data(), circuit_.n_params());
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        const auto state = sim::apply_circuit(circuit_, feats, theta);
        std::vector<double> z(obs_.size());
        for (std::size_t k = 0; k < obs_.size(); ++k) {
            z[k] = sim::expectation(state, obs_[k]);
        }
        return z;
    }

  private:
    void build(int d) {
        d_ = d;
        const int n = (d + 2) / 3;
        require(n <= spec_.max_qubits, "DataReuploading: register of ", n,
                " qubits exceeds the cap of ", spec_.max_qubits);
        const int layers = static_cast<int>(spec_.hp_long("n_layers", 1));
        const std::string obs_type = spec_.hp_string("observable_type", "single");
        n_max_ = obs_type == "single" ? 1
                 : obs_type == "half" ? (n + 1) / 2
                                      : n;
        require(obs_type == "single" || obs_type == "half" ||
                    obs_type == "full",
                "DataReuploading: unknown observable_type '", obs_type, "'");

        circuit_ = sim::Circuit(n, d);
        const bool trainable_scaling = !spec_.flags.no_scaling;
        theta_count_ = 3 * n * layers;
        const int theta_base = circuit_.add_params(theta_count_);
        int omega_base = -1;
        if (trainable_scaling) {
            omega_base = circuit_.add_params(3 * n * layers);
        }
        auto angle = [&](int l, int q, int c, bool with_theta,
                         bool with_feature) {
            const int p_theta = theta_base + 3 * (l * n + q) + c;
            const int f = 3 * q + c;
            sim::AngleExpr e;
            if (with_feature && f < d) {
                if (trainable_scaling) {
                    e.terms.push_back(
                        {1.0, f, -1, omega_base + 3 * (l * n + q) + c});
                } else {
                    e.terms.push_back({1.0, f, -1, -1});
                }
            }
            if (with_theta) {
                e.terms.push_back({1.0, -1, -1, p_theta});
            }
            if (e.terms.empty()) {
                e = sim::AngleExpr::literal(0.0);
            }
            return e;
        };
        auto encode_layer = [&](int l, bool with_theta, bool with_feature) {
            for (int q = 0; q < n; ++q) {
                circuit_.rot(q, angle(l, q, 0, with_theta, with_feature),
                             angle(l, q, 1, with_theta, with_feature),
                             angle(l, q, 2, with_theta, with_feature));
            }
            if (!spec_.flags.no_entanglement) {
                sim::append_cz_ladder(circuit_);
            }
        };
        if (spec_.flags.no_trainable_embedding) {
            for (int l = 0; l < layers; ++l) {
                encode_layer(l, false, true); // data encoding first
            }
            for (int l = 0; l < layers; ++l) {
                encode_layer(l, true, false); // then all variational gates
            }
        } else {
            for (int l = 0; l < layers; ++l) {
                encode_layer(l, true, true);
            }
        }

        obs_.clear();
        for (int j = 0; j < n_max_; ++j) {
            obs_.push_back(sim::Observable::z_on(j, n));
        }
        // full trainable vector: [theta..., omega..., a0..., a1...]
        total_params_ = static_cast<std::size_t>(circuit_.n_params()) +
                        (spec_.flags.no_cost ? 0 : 2 * n_max_);
    }

    int d_ = 0;
    int n_max_ = 1;
    int theta_count_ = 0;
    std::size_t total_params_ = 0;
    sim::Circuit circuit_{1, 0};
    std::vector<sim::Observable> obs_;
    std::vector<double> params_;
};

// ---------------------------------------------------------------------------
// DressedQuantumCircuit: classical layer -> angle-embedded circuit with RY +
// CNOT-ring layers -> classical layer -> softmax cross entropy, trained
// end to end.
// ---------------------------------------------------------------------------
class DressedQuantumCircuitModel : public AngleScaledModel {
  public:
    explicit DressedQuantumCircuitModel(ModelSpec spec)
        : AngleScaledModel(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        fit_scaler(x);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x6471ULL));
        params_.clear();
        detail::fill_uniform_angles(rng, params_, circuit_.n_params());
        detail::fill_small_normal(
            rng, params_, n_ * d_ + 2 * n_); // W_in then W_out

        const Eigen::MatrixXd xp = preprocess_all(x);
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    loss += sample_loss_grad(xp.row(idx).transpose(), y[idx],
                                             p, grad, 1.0 / batch.size());
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    int predict(const Eigen::VectorXd &x) const override {
        const auto logits = forward_logits(preprocess(x), params_);
        return logits[1] >= logits[0] ? 1 : -1;
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

    double sample_loss_grad(const Eigen::VectorXd &xp, int label,
                            const std::vector<double> &p,
                            std::vector<double> &grad, double weight) const {
        const int np = circuit_.n_params();
        Eigen::Map<const Eigen::MatrixXd> w_in(p.data() + np, n_, d_);
        Eigen::Map<const Eigen::MatrixXd> w_out(p.data() + np + n_ * d_, n_, 2);
        Eigen::Map<Eigen::MatrixXd> g_in(grad.data() + np, n_, d_);
        Eigen::Map<Eigen::MatrixXd> g_out(grad.data() + np + n_ * d_, n_, 2);

        const Eigen::VectorXd u = w_in * xp;
        const Eigen::VectorXd a = (std::numbers::pi / 2.0) * u.array().tanh();
        const std::vector<double> feats(a.data(), a.data() + a.size());
        const std::span theta(p.data(), np);

        const auto state = sim::apply_circuit(circuit_, feats, theta);
        Eigen::VectorXd z(n_);
        for (int q = 0; q < n_; ++q) {
            z(q) = sim::expectation(state, obs_[q]);
        }
        const Eigen::Vector2d logits = w_out.transpose() * z;
        const double m = logits.maxCoeff();
        const Eigen::Vector2d soft =
            ((logits.array() - m).exp() /
             (logits.array() - m).exp().sum())
                .matrix();
        const int target = label == 1 ? 1 : 0;
        const double loss = -std::log(std::max(soft(target), 1e-12));

        Eigen::Vector2d dlogits = soft;
        dlogits(target) -= 1.0;
        g_out.noalias() += weight * z * dlogits.transpose();
        const Eigen::VectorXd dz = w_out * dlogits;

        const auto jac_theta = autodiff::parameter_shift_jacobian(
            circuit_, obs_, feats, theta);
        for (int k = 0; k < np; ++k) {
            double acc = 0.0;
            for (int q = 0; q < n_; ++q) {
                acc += dz(q) * jac_theta.d_params(q, k);
            }
            grad[k] += weight * acc;
        }
        const Eigen::MatrixXd jac_a = autodiff::feature_shift_jacobian(
            circuit_, obs_, feats, theta);
        Eigen::VectorXd da = jac_a.transpose() * dz;
        // chain through the pi/2-scaled tanh input layer
        for (int q = 0; q < n_; ++q) {
            const double t = std::tanh(u(q));
            da(q) *= (std::numbers::pi / 2.0) * (1.0 - t * t);
        }
        g_in.noalias() += weight * da * xp.transpose();
        return loss;
    }

    std::size_t parameter_count() const {
        return static_cast<std::size_t>(circuit_.n_params()) + n_ * d_ +
               2 * n_;
    }
    const std::vector<double> &parameters() const { return params_; }
    std::vector<double> &mutable_parameters() { return params_; }
    const sim::Circuit &circuit() const { return circuit_; }

    std::array<double, 2> forward_logits(const Eigen::VectorXd &xp,
                                         const std::vector<double> &p) const {
        const int np = circuit_.n_params();
        Eigen::Map<const Eigen::MatrixXd> w_in(p.data() + np, n_, d_);
        Eigen::Map<const Eigen::MatrixXd> w_out(p.data() + np + n_ * d_, n_, 2);
        const Eigen::VectorXd a =
            (std::numbers::pi / 2.0) * (w_in * xp).array().tanh();
        const std::vector<double> feats(a.data(), a.data() + a.size());
        const std::span theta(p.data(), np);
        const auto state = sim::apply_circuit(circuit_, feats, theta);
        Eigen::VectorXd z(n_);
        for (int q = 0; q < n_; ++q) {
            z(q) = sim::expectation(state, obs_[q]);
        }
        const Eigen::Vector2d logits = w_out.transpose() * z;
        return {logits(0), logits(1)};
    }

  private:
    void build(int d) {
        d_ = d;
        n_ = d;
        require(n_ <= spec_.max_qubits, "DressedQuantumCircuit: register of ",
                n_, " qubits exceeds the cap of ", spec_.max_qubits);
        const int layers = static_cast<int>(spec_.hp_long("n_layers", 1));
        circuit_ = sim::Circuit(n_, n_);
        for (int q = 0; q < n_; ++q) {
            circuit_.rx(q, sim::AngleExpr::feature(q));
        }
        const int base = circuit_.add_params(layers * n_);
        for (int l = 0; l < layers; ++l) {
            for (int q = 0; q < n_; ++q) {
                circuit_.ry(q, sim::AngleExpr::param(base + l * n_ + q));
            }
            if (!spec_.flags.no_entanglement) {
                sim::append_cnot_ring(circuit_);
            }
        }
        obs_.clear();
        for (int q = 0; q < n_; ++q) {
            obs_.push_back(sim::Observable::z_on(q, n_));
        }
    }

    int d_ = 0;
    int n_ = 0;
    sim::Circuit circuit_{1, 0};
    std::vector<sim::Observable> obs_;
    std::vector<double> params_; // [theta..., W_in (n x d), W_out (n x 2)]
};

// ---------------------------------------------------------------------------
// IQPVariational: IQP-inspired embedding, strongly entangling block,
// sign(<Z_1 Z_2>), linear loss (1 - y f)/2.
// ---------------------------------------------------------------------------
class IQPVariationalModel : public AngleScaledModel {
  public:
    explicit IQPVariationalModel(ModelSpec spec)
        : AngleScaledModel(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        require(x.cols() >= 2,
                "IQPVariational: needs at least two features, got ", x.cols());
        fit_scaler(x);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x697170ULL));
        params_.clear();
        detail::fill_uniform_angles(rng, params_, circuit_.n_params());

        const Eigen::MatrixXd xp = preprocess_all(x);
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    loss += sample_loss_grad(xp.row(idx).transpose(), y[idx],
                                             p, grad, 1.0 / batch.size());
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    double decision(const Eigen::VectorXd &x) const {
        return value(preprocess(x), params_);
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(decision(x));
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

    double sample_loss_grad(const Eigen::VectorXd &xp, int label,
                            const std::vector<double> &p,
                            std::vector<double> &grad, double weight) const {
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        const auto jac = autodiff::parameter_shift_jacobian(
            circuit_, std::span(&obs_, 1), feats, p);
        const double f = value(xp, p);
        const double loss = (1.0 - label * f) / 2.0;
        const double df = -label / 2.0;
        for (int k = 0; k < circuit_.n_params(); ++k) {
            grad[k] += weight * df * jac.d_params(0, k);
        }
        return loss;
    }

    double value(const Eigen::VectorXd &xp, const std::vector<double> &p) const {
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        return sim::expectation(sim::apply_circuit(circuit_, feats, p), obs_);
    }

    std::size_t parameter_count() const { return params_.size(); }
    const std::vector<double> &parameters() const { return params_; }

  private:
    void build(int d) {
        d_ = d;
        require(d <= spec_.max_qubits, "IQPVariational: register of ", d,
                " qubits exceeds the cap of ", spec_.max_qubits);
        circuit_ = sim::Circuit(d, d);
        sim::append_iqp_embedding(circuit_,
                                  static_cast<int>(spec_.hp_long("repeats", 1)),
                                  spec_.flags.no_entanglement);
        sim::append_strongly_entangling(
            circuit_, static_cast<int>(spec_.hp_long("n_layers", 1)),
            spec_.flags.no_entanglement);
        obs_ = sim::Observable({{1.0, [&] {
                                     std::string w(d, 'I');
                                     w[0] = 'Z';
                                     w[1] = 'Z';
                                     return w;
                                 }()}});
    }

    int d_ = 0;
    sim::Circuit circuit_{1, 0};
    sim::Observable obs_;
    std::vector<double> params_;
};

// ---------------------------------------------------------------------------
// TreeTensor: amplitude embedding into a power-of-two register, RY + CNOT
// tree with 2n - 1 parameters, sign(<Z_1>), square loss.
// ---------------------------------------------------------------------------
class TreeTensorModel : public Classifier {
  public:
    explicit TreeTensorModel(ModelSpec spec) : Classifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x7474ULL));
        params_.clear();
        detail::fill_uniform_angles(rng, params_, circuit_.n_params());

        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    const auto embedded = embed(x.row(idx).transpose());
                    const double f = value(embedded, p);
                    const double r = f - y[idx];
                    loss += r * r;
                    const auto jac = autodiff::parameter_shift_jacobian(
                        circuit_, std::span(&obs_, 1), {}, p, 1e-6, &embedded);
                    for (int k = 0; k < circuit_.n_params(); ++k) {
                        grad[k] += 2.0 * r * jac.d_params(0, k) / batch.size();
                    }
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(value(embed(x), params_));
    }

    int n_qubits() const { return circuit_.n_qubits(); }
    std::size_t parameter_count() const { return params_.size(); }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

  private:
    void build(int d) {
        d_ = d;
        const int reg = std::max(
            1, static_cast<int>(std::ceil(std::log2(std::max(d, 2)))));
        int n = 1;
        while (n < reg) {
            n *= 2;
        }
        require(n <= spec_.max_qubits, "TreeTensor: register of ", n,
                " qubits exceeds the cap of ", spec_.max_qubits);
        circuit_ = sim::Circuit(n, 0);
        std::vector<int> active(n);
        for (int q = 0; q < n; ++q) {
            active[q] = q;
        }
        int base = circuit_.add_params(2 * n - 1);
        for (int q = 0; q < n; ++q) {
            circuit_.ry(q, sim::AngleExpr::param(base++));
        }
        while (active.size() > 1) {
            std::vector<int> next;
            for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
                if (!spec_.flags.no_entanglement) {
                    circuit_.cnot(active[i + 1], active[i]);
                }
                next.push_back(active[i]);
            }
            active = std::move(next);
            for (int q : active) {
                circuit_.ry(q, sim::AngleExpr::param(base++));
            }
        }
        obs_ = sim::Observable::z_on(0, n);
    }

    sim::StateVector embed(const Eigen::VectorXd &x) const {
        std::vector<double> values(x.data(), x.data() + x.size());
        return sim::amplitude_embed(values, circuit_.n_qubits());
    }

    double value(const sim::StateVector &embedded,
                 const std::vector<double> &p) const {
        sim::StateVector state = embedded;
        sim::apply_circuit_to(state, circuit_, {}, p);
        return sim::expectation(state, obs_);
    }

    int d_ = 0;
    sim::Circuit circuit_{1, 0};
    sim::Observable obs_;
    std::vector<double> params_;
};

// ---------------------------------------------------------------------------
// SeparableVariational: d independent single-qubit circuits, mean-Z readout,
// sigmoid(6 <O>) cross entropy. Memory stays linear in d.
// ---------------------------------------------------------------------------
class SeparableVariationalModel : public AngleScaledModel {
  public:
    explicit SeparableVariationalModel(ModelSpec spec)
        : AngleScaledModel(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        fit_scaler(x);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x7376ULL));
        params_.clear();
        detail::fill_uniform_angles(rng, params_,
                                    d_ * per_qubit_params_);

        const Eigen::MatrixXd xp = preprocess_all(x);
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    loss += sample_loss_grad(xp.row(idx).transpose(), y[idx],
                                             p, grad, 1.0 / batch.size());
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.01),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    double mean_z(const Eigen::VectorXd &xp, const std::vector<double> &p) const {
        double total = 0.0;
        for (int q = 0; q < d_; ++q) {
            total += qubit_z(q, xp(q), p);
        }
        return total / d_;
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(mean_z(preprocess(x), params_));
    }

    double probability_positive(const Eigen::VectorXd &x) const {
        return 1.0 / (1.0 + std::exp(-6.0 * mean_z(preprocess(x), params_)));
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

    double sample_loss_grad(const Eigen::VectorXd &xp, int label,
                            const std::vector<double> &p,
                            std::vector<double> &grad, double weight) const {
        const double o = mean_z(xp, p);
        const double prob = 1.0 / (1.0 + std::exp(-6.0 * o));
        const double y01 = label == 1 ? 1.0 : 0.0;
        const double loss = label == 1 ? -std::log(std::max(prob, 1e-12))
                                       : -std::log(std::max(1 - prob, 1e-12));
        const double dz_common = (prob - y01) * 6.0 / d_;
        for (int q = 0; q < d_; ++q) {
            const std::vector<double> feat{xp(q)};
            const std::span theta(p.data() + q * per_qubit_params_,
                                  per_qubit_params_);
            const auto jac = autodiff::parameter_shift_jacobian(
                qubit_circuit_, std::span(&z_obs_, 1), feat, theta);
            for (int k = 0; k < per_qubit_params_; ++k) {
                grad[q * per_qubit_params_ + k] +=
                    weight * dz_common * jac.d_params(0, k);
            }
        }
        return loss;
    }

    std::size_t parameter_count() const { return params_.size(); }
    const std::vector<double> &parameters() const { return params_; }
    int n_features() const { return d_; }

    double qubit_z(int q, double feature, const std::vector<double> &p) const {
        const std::vector<double> feat{feature};
        const std::span theta(p.data() + q * per_qubit_params_,
                              per_qubit_params_);
        return sim::expectation(
            sim::apply_circuit(qubit_circuit_, feat, theta), z_obs_);
    }

  private:
    void build(int d) {
        d_ = d;
        const int layers =
            static_cast<int>(spec_.hp_long("encoding_layers", 1));
        qubit_circuit_ = sim::Circuit(1, 1);
        const int base = qubit_circuit_.add_params(3 * (layers + 1));
        for (int l = 0; l < layers; ++l) {
            qubit_circuit_.rot(0, sim::AngleExpr::param(base + 3 * l),
                               sim::AngleExpr::param(base + 3 * l + 1),
                               sim::AngleExpr::param(base + 3 * l + 2));
            qubit_circuit_.ry(0, sim::AngleExpr::feature(0));
        }
        qubit_circuit_.rot(0, sim::AngleExpr::param(base + 3 * layers),
                           sim::AngleExpr::param(base + 3 * layers + 1),
                           sim::AngleExpr::param(base + 3 * layers + 2));
        per_qubit_params_ = qubit_circuit_.n_params();
        z_obs_ = sim::Observable::z_on(0, 1);
    }

    int d_ = 0;
    int per_qubit_params_ = 0;
    sim::Circuit qubit_circuit_{1, 1};
    sim::Observable z_obs_;
    std::vector<double> params_; // per-qubit blocks of 3(L+1) angles
};

} // namespace qmlbench::models
