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
 * Kernel-family models: fidelity kernels fed to the SVM, the projected
 * quantum kernel (Gaussian kernel over single-qubit Pauli features) and the
 * sampling-based quantum kitchen sinks feature map with logistic readout.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "qmlbench/classical/logistic.hpp"
#include "qmlbench/classical/svm.hpp"
#include "qmlbench/models/circuit_models.hpp"
#include "qmlbench/models/classifier.hpp"
#include "qmlbench/sim/density_matrix.hpp"
#include "qmlbench/sim/sampling.hpp"
#include "qmlbench/sim/templates.hpp"

namespace qmlbench::models {

/// Shared plumbing for kernels trained through the precomputed-Gram SVM.
class SvmKernelModel : public KernelClassifier {
  public:
    using KernelClassifier::KernelClassifier;

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        scaler_.fit(x);
        prepare(static_cast<int>(x.cols()));
        train_xp_ = spec_.input_scale * scaler_.transform(x);
        cache_training_embeddings(train_xp_);
        const Eigen::Index n = train_xp_.rows();
        gram_.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                gram_(i, j) = gram_(j, i) = training_kernel(
                    static_cast<int>(i), static_cast<int>(j));
            }
        }
        svm_ = classical::SVMModel::from_precomputed(
            gram_, y, spec_.hp_double("C", 1.0));
        info_ = TrainInfo{};
    }

    int predict(const Eigen::VectorXd &x) const override {
        const Eigen::VectorXd xp =
            spec_.input_scale * scaler_.transform(x);
        Eigen::VectorXd row(train_xp_.rows());
        for (Eigen::Index i = 0; i < train_xp_.rows(); ++i) {
            row(i) = kernel_embedded(train_xp_.row(i).transpose(), xp);
        }
        return sign_class(svm_.decision_from_kernel(row));
    }

    double kernel(const Eigen::VectorXd &a,
                  const Eigen::VectorXd &b) const override {
        return kernel_embedded(spec_.input_scale * scaler_.transform(a),
                               spec_.input_scale * scaler_.transform(b));
    }

    /// Kernel in the already-preprocessed (angle) space.
    virtual double kernel_embedded(const Eigen::VectorXd &a,
                                   const Eigen::VectorXd &b) const = 0;

    const Eigen::MatrixXd &gram() const override { return gram_; }
    const classical::SVMModel &svm() const { return svm_; }

  protected:
    /// Builds per-dimension structures once the feature count is known.
    virtual void prepare(int d) = 0;
    /// Optional hook to cache per-training-point embeddings.
    virtual void cache_training_embeddings(const Eigen::MatrixXd &) {}
    /// Kernel between two cached training rows; defaults to kernel_embedded.
    virtual double training_kernel(int i, int j) const {
        return kernel_embedded(train_xp_.row(i).transpose(),
                               train_xp_.row(j).transpose());
    }

    json save_common() const {
        return {{"spec", spec_.to_json()},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"train_xp", detail::eigen_to_json(train_xp_)},
                {"dual_coef", detail::eigen_to_json(svm_.dual_coef())},
                {"bias", svm_.bias()}};
    }

    void restore_common(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        train_xp_ = detail::eigen_from_json(j.at("train_xp"));
        prepare(static_cast<int>(train_xp_.cols()));
        cache_training_embeddings(train_xp_);
        svm_.restore(detail::eigen_from_json(j.at("dual_coef")).col(0),
                     j.at("bias").get<double>(), 0.0, {});
        gram_.resize(0, 0);
    }

    classical::AngleScaler scaler_;
    Eigen::MatrixXd train_xp_;
    Eigen::MatrixXd gram_;
    classical::SVMModel svm_;
};

// ---------------------------------------------------------------------------
// IQPKernel: fidelity of IQP-embedded states.
// ---------------------------------------------------------------------------
class IQPKernelModel : public SvmKernelModel {
  public:
    explicit IQPKernelModel(ModelSpec spec)
        : SvmKernelModel(std::move(spec)) {}

    double kernel_embedded(const Eigen::VectorXd &a,
                           const Eigen::VectorXd &b) const override {
        return sim::state_overlap(embed(a), embed(b));
    }

    json save() const override { return save_common(); }
    void restore(const json &j) { restore_common(j); }

  protected:
    void prepare(int d) override {
        require(d <= spec_.max_qubits, "IQPKernel: register of ", d,
                " qubits exceeds the cap of ", spec_.max_qubits);
        circuit_ = sim::Circuit(d, d);
        sim::append_iqp_embedding(circuit_,
                                  static_cast<int>(spec_.hp_long("repeats", 1)),
                                  spec_.flags.no_entanglement);
    }

    void cache_training_embeddings(const Eigen::MatrixXd &xp) override {
        states_.clear();
        for (Eigen::Index i = 0; i < xp.rows(); ++i) {
            states_.push_back(embed(xp.row(i).transpose()));
        }
    }

    double training_kernel(int i, int j) const override {
        return sim::state_overlap(states_[i], states_[j]);
    }

  private:
    sim::StateVector embed(const Eigen::VectorXd &xp) const {
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        return sim::apply_circuit(circuit_, feats, {});
    }

    sim::Circuit circuit_{1, 0};
    std::vector<sim::StateVector> states_;
};

// ---------------------------------------------------------------------------
// ProjectedQuantumKernel: Heisenberg-style trotterized embedding, then a
// Gaussian kernel on the single-qubit X/Y/Z expectation features.
// ---------------------------------------------------------------------------
class ProjectedQuantumKernelModel : public SvmKernelModel {
  public:
    explicit ProjectedQuantumKernelModel(ModelSpec spec)
        : SvmKernelModel(std::move(spec)) {}

    /// 3 (d+1) Pauli expectations of the embedded state.
    Eigen::VectorXd features(const Eigen::VectorXd &xp) const {
        const std::vector<double> feats(xp.data(), xp.data() + xp.size());
        const auto state = sim::apply_circuit(circuit_, feats, {});
        const int n = circuit_.n_qubits();
        Eigen::VectorXd phi(3 * n);
        for (int q = 0; q < n; ++q) {
            const auto rho = sim::reduced_density_matrix(state, q);
            const auto &m = rho.matrix();
            phi(3 * q) = 2.0 * m(0, 1).real();      // <X>
            phi(3 * q + 1) = -2.0 * m(0, 1).imag(); // <Y>
            phi(3 * q + 2) = (m(0, 0) - m(1, 1)).real();
        }
        return phi;
    }

    double kernel_embedded(const Eigen::VectorXd &a,
                           const Eigen::VectorXd &b) const override {
        return kernel_from_features(features(a), features(b));
    }

    double gamma() const { return gamma_; }

    json save() const override {
        json j = save_common();
        j["gamma"] = gamma_;
        return j;
    }

    void restore(const json &j) {
        restore_common(j);
        gamma_ = j.at("gamma").get<double>();
    }

  protected:
    void prepare(int d) override {
        const int n = d + 1;
        require(n <= spec_.max_qubits, "ProjectedQuantumKernel: register of ",
                n, " qubits exceeds the cap of ", spec_.max_qubits);
        const int steps = static_cast<int>(spec_.hp_long("trotter_steps", 1));
        const double t = spec_.hp_double("t", 1.0);
        circuit_ = sim::Circuit(n, d);
        // fixed random single-qubit basis rotations, seeded by the model seed
        Rng rng(mix_seed(spec_.seed, 0x70716bULL));
        for (int q = 0; q < n; ++q) {
            circuit_.rot(
                q,
                sim::AngleExpr::literal(rng.uniform(0, 2 * std::numbers::pi)),
                sim::AngleExpr::literal(rng.uniform(0, 2 * std::numbers::pi)),
                sim::AngleExpr::literal(rng.uniform(0, 2 * std::numbers::pi)));
        }
        if (!spec_.flags.no_entanglement) {
            // exp(-i (t/L) x_j (XX + YY + ZZ)) pair rotations on the chain;
            // PauliRot(theta) is exp(-i theta/2 P), hence the factor 2 t / L
            for (int s = 0; s < steps; ++s) {
                for (int j = 0; j < d; ++j) {
                    const double scale = 2.0 * t / steps;
                    circuit_.pauli_rot({j, j + 1}, "XX",
                                       sim::AngleExpr::feature(j, scale));
                    circuit_.pauli_rot({j, j + 1}, "YY",
                                       sim::AngleExpr::feature(j, scale));
                    circuit_.pauli_rot({j, j + 1}, "ZZ",
                                       sim::AngleExpr::feature(j, scale));
                }
            }
        }
    }

    void cache_training_embeddings(const Eigen::MatrixXd &xp) override {
        const Eigen::Index n = xp.rows();
        phi_.resize(n, 3 * circuit_.n_qubits());
        for (Eigen::Index i = 0; i < n; ++i) {
            phi_.row(i) = features(xp.row(i).transpose()).transpose();
        }
        // default bandwidth 1/(Var(phi) d), scaled by the gamma_factor
        const double mean = phi_.mean();
        const double var =
            (phi_.array() - mean).square().sum() / phi_.size();
        require(var > 0.0, "ProjectedQuantumKernel: feature variance is zero, "
                           "the default bandwidth 1/(Var(phi) d) is undefined");
        gamma_ = spec_.hp_double("gamma_factor", 1.0) /
                 (var * static_cast<double>(train_xp_.cols()));
    }

    double training_kernel(int i, int j) const override {
        return kernel_from_features(phi_.row(i).transpose(),
                                    phi_.row(j).transpose());
    }

  private:
    double kernel_from_features(const Eigen::VectorXd &a,
                                const Eigen::VectorXd &b) const {
        return std::exp(-gamma_ * (a - b).squaredNorm());
    }

    sim::Circuit circuit_{1, 0};
    Eigen::MatrixXd phi_;
    double gamma_ = 1.0;
};

// ---------------------------------------------------------------------------
// SeparableKernel: product of single-qubit fidelities; every qubit sees L
// layers of RX(pi/4) followed by RY(x_j).
// ---------------------------------------------------------------------------
class SeparableKernelModel : public SvmKernelModel {
  public:
    explicit SeparableKernelModel(ModelSpec spec)
        : SvmKernelModel(std::move(spec)) {}

    /// Single-feature embedded state; 2 amplitudes regardless of d.
    sim::StateVector qubit_state(double feature) const {
        const std::vector<double> feat{feature};
        return sim::apply_circuit(qubit_circuit_, feat, {});
    }

    double kernel_embedded(const Eigen::VectorXd &a,
                           const Eigen::VectorXd &b) const override {
        double k = 1.0;
        for (Eigen::Index j = 0; j < a.size(); ++j) {
            k *= sim::state_overlap(qubit_state(a(j)), qubit_state(b(j)));
        }
        return k;
    }

    json save() const override { return save_common(); }
    void restore(const json &j) { restore_common(j); }

  protected:
    void prepare(int) override {
        const int layers =
            static_cast<int>(spec_.hp_long("encoding_layers", 1));
        qubit_circuit_ = sim::Circuit(1, 1);
        for (int l = 0; l < layers; ++l) {
            qubit_circuit_.rx(0,
                              sim::AngleExpr::literal(std::numbers::pi / 4.0));
            qubit_circuit_.ry(0, sim::AngleExpr::feature(0));
        }
    }

  private:
    sim::Circuit qubit_circuit_{1, 1};
};

// ---------------------------------------------------------------------------
// QuantumKitchenSinks: random linear maps into angle-encoded circuits, one
// basis sample per episode, concatenated bits into a logistic regression.
// ---------------------------------------------------------------------------
class QuantumKitchenSinksModel : public KernelClassifier {
  public:
    explicit QuantumKitchenSinksModel(ModelSpec spec)
        : KernelClassifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        scaler_.fit(x);
        build(static_cast<int>(x.cols()));
        const Eigen::MatrixXd xp = spec_.input_scale * scaler_.transform(x);
        Eigen::MatrixXd feats(x.rows(), q_ * episodes_);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            feats.row(i) = feature_map(xp.row(i).transpose()).transpose();
        }
        train_features_ = feats;
        gram_ = feats * feats.transpose();
        logistic_.fit(feats, y);
        info_ = TrainInfo{};
    }

    int predict(const Eigen::VectorXd &x) const override {
        const Eigen::VectorXd xp =
            spec_.input_scale * scaler_.transform(x);
        return logistic_.predict(feature_map(xp));
    }

    /// Concatenated one-sample bitstrings; deterministic per input value.
    Eigen::VectorXd feature_map(const Eigen::VectorXd &xp) const {
        Eigen::VectorXd out(q_ * episodes_);
        for (int k = 0; k < episodes_; ++k) {
            const Eigen::VectorXd angles = w_[k] * xp + b_[k];
            const std::vector<double> feats(angles.data(),
                                            angles.data() + angles.size());
            const auto state = sim::apply_circuit(circuit_, feats, {});
            const auto bits = sim::sample_bitstrings(
                state, 1, mix_seed(spec_.seed, 0x716b73ULL, k, hash_of(xp)));
            for (int j = 0; j < q_; ++j) {
                out(k * q_ + j) = bits[0][j] == '1' ? 1.0 : 0.0;
            }
        }
        return out;
    }

    /// The induced kernel: inner product of feature-mapped vectors.
    double kernel(const Eigen::VectorXd &a,
                  const Eigen::VectorXd &b) const override {
        return feature_map(spec_.input_scale * scaler_.transform(a))
            .dot(feature_map(spec_.input_scale * scaler_.transform(b)));
    }

    const Eigen::MatrixXd &gram() const override { return gram_; }
    const Eigen::MatrixXd &train_features() const { return train_features_; }

    json save() const override {
        json maps = json::array();
        for (int k = 0; k < episodes_; ++k) {
            maps.push_back({{"w", detail::eigen_to_json(w_[k])},
                            {"b", detail::eigen_to_json(b_[k])}});
        }
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"scaler", detail::angle_scaler_to_json(scaler_)},
                {"weights", detail::eigen_to_json(logistic_.weights())},
                {"bias", logistic_.bias()},
                {"maps", maps}};
    }

    void restore(const json &j) {
        detail::angle_scaler_from_json(j.at("scaler"), scaler_);
        build(j.at("d").get<int>());
        logistic_.restore(detail::eigen_from_json(j.at("weights")).col(0),
                          j.at("bias").get<double>());
        const auto &maps = j.at("maps");
        for (int k = 0; k < episodes_; ++k) {
            w_[k] = detail::eigen_from_json(maps[k].at("w"));
            b_[k] = detail::eigen_from_json(maps[k].at("b")).col(0);
        }
    }

  private:
    static std::uint64_t hash_of(const Eigen::VectorXd &x) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            std::uint64_t bits;
            const double v = x(i);
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(bits));
            h = mix_seed(h, bits);
        }
        return h;
    }

    void build(int d) {
        d_ = d;
        const std::string qf = spec_.hp_string("n_qfeatures", "full");
        require(qf == "full" || qf == "half",
                "QuantumKitchenSinks: n_qfeatures must be 'full' or 'half'");
        q_ = qf == "full" ? d : std::max(1, d / 2);
        require(q_ <= spec_.max_qubits, "QuantumKitchenSinks: register of ",
                q_, " qubits exceeds the cap of ", spec_.max_qubits);
        episodes_ = static_cast<int>(spec_.hp_long("n_episodes", 10));

        circuit_ = sim::Circuit(q_, q_);
        for (int j = 0; j < q_; ++j) {
            circuit_.rx(j, sim::AngleExpr::feature(j));
        }
        if (!spec_.flags.no_entanglement) {
            for (int j = 0; j + 1 < q_; ++j) {
                circuit_.cnot(j, j + 1);
            }
            for (int j = 0; j + 2 < q_; ++j) {
                circuit_.cnot(j, j + 2);
            }
        }

        Rng rng(mix_seed(spec_.seed, 0x716b7357ULL));
        w_.assign(episodes_, Eigen::MatrixXd(q_, d));
        b_.assign(episodes_, Eigen::VectorXd(q_));
        for (int k = 0; k < episodes_; ++k) {
            for (int i = 0; i < q_; ++i) {
                for (int j = 0; j < d; ++j) {
                    w_[k](i, j) = rng.normal();
                }
            }
            for (int i = 0; i < q_; ++i) {
                b_[k](i) = rng.uniform(0.0, 2.0 * std::numbers::pi);
            }
        }
    }

    int d_ = 0;
    int q_ = 1;
    int episodes_ = 10;
    sim::Circuit circuit_{1, 1};
    std::vector<Eigen::MatrixXd> w_;
    std::vector<Eigen::VectorXd> b_;
    classical::AngleScaler scaler_;
    classical::LogisticModel logistic_;
    Eigen::MatrixXd train_features_;
    Eigen::MatrixXd gram_;
};

} // namespace qmlbench::models
