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
 * Image models with a quantum front end. Quanvolutional applies fixed random
 * circuits as convolutional filters (the output is the ones-count of the most
 * probable bitstring) and feeds the maps to the classical CNN. WeiNet mixes
 * 16 shift-filter unitaries acting on an amplitude-embedded image with
 * trainable mixture weights, reads out Z/ZZ correlators after tracing out a
 * pooling qubit pair, and classifies with a linear layer.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "qmlbench/autodiff/trainer.hpp"
#include "qmlbench/classical/cnn.hpp"
#include "qmlbench/models/circuit_models.hpp"
#include "qmlbench/models/classifier.hpp"
#include "qmlbench/sim/sampling.hpp"
#include "qmlbench/sim/templates.hpp"

namespace qmlbench::models {

namespace detail {

inline int image_side(int n_features) {
    const int h = static_cast<int>(std::lround(std::sqrt(n_features)));
    require(h * h == n_features, "expected a square image, got ", n_features,
            " pixels");
    return h;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Quanvolutional: threshold to {0, pi}, seeded random-circuit filters with
// ones-count-of-argmax readout, then the classical CNN.
// ---------------------------------------------------------------------------
class QuanvolutionalModel : public Classifier {
  public:
    explicit QuanvolutionalModel(ModelSpec spec)
        : Classifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        h_ = detail::image_side(static_cast<int>(x.cols()));
        build();
        require(h_ >= qkernel_, "Quanvolutional: image of size ", h_,
                " is smaller than the quantum kernel ", qkernel_);
        // global min/max over the training pixels for the [-1, 1] rescale
        pixel_min_ = x.minCoeff();
        pixel_max_ = x.maxCoeff();

        std::vector<classical::ImageTensor> maps(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            maps[i] = quantum_feature_map(x.row(i).transpose());
        }
        cnn_.fit(maps, y,
                 {.kernel_shape =
                      static_cast<int>(spec_.hp_long("kernel_shape", 2)),
                  .learning_rate = spec_.hp_double("learning_rate", 0.001),
                  .max_steps = spec_.max_steps,
                  .seed = spec_.seed});
        info_ = {cnn_.loss_history(), cnn_.converged(),
                 static_cast<long>(cnn_.loss_history().size())};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return cnn_.predict(quantum_feature_map(x));
    }

    /// Thresholded pixels fed through the per-channel random circuits;
    /// output channel values are ones-counts in {0, ..., n_q^2}.
    classical::ImageTensor quantum_feature_map(const Eigen::VectorXd &x) const {
        const int out_h = h_ - qkernel_ + 1;
        classical::ImageTensor out;
        out.channels = channels_;
        out.height = out_h;
        out.data.assign(static_cast<std::size_t>(channels_) * out_h * out_h,
                        0.0);
        // rescale to [-1, 1], then binary threshold at zero onto {0, pi}
        const double range = pixel_max_ - pixel_min_;
        Eigen::VectorXd scaled(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double unit =
                range == 0.0
                    ? 0.0
                    : 2.0 * (x(i) - pixel_min_) / range - 1.0;
            scaled(i) = unit > 0.0 ? std::numbers::pi : 0.0;
        }
        std::vector<double> window(qkernel_ * qkernel_);
        for (int c = 0; c < channels_; ++c) {
            for (int i = 0; i < out_h; ++i) {
                for (int j = 0; j < out_h; ++j) {
                    for (int wi = 0; wi < qkernel_; ++wi) {
                        for (int wj = 0; wj < qkernel_; ++wj) {
                            window[wi * qkernel_ + wj] =
                                scaled((i + wi) * h_ + (j + wj));
                        }
                    }
                    out.at(c, i, j) = filter_value(c, window);
                }
            }
        }
        return out;
    }

    double filter_value(int channel, const std::vector<double> &window) const {
        const auto state =
            sim::apply_circuit(filters_[channel], window, {});
        const auto bits = sim::most_probable_bitstring(state);
        return static_cast<double>(std::count(bits.begin(), bits.end(), '1'));
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"h", h_},
                {"pixel_min", pixel_min_},
                {"pixel_max", pixel_max_},
                {"cnn_params", detail::vector_to_json(cnn_.parameters())}};
    }

    void restore(const json &j) {
        h_ = j.at("h").get<int>();
        build();
        pixel_min_ = j.at("pixel_min").get<double>();
        pixel_max_ = j.at("pixel_max").get<double>();
        const int out_h = h_ - qkernel_ + 1;
        cnn_.prepare(channels_, out_h,
                     {.kernel_shape =
                          static_cast<int>(spec_.hp_long("kernel_shape", 2)),
                      .seed = spec_.seed});
        cnn_.mutable_parameters() = detail::vector_from_json(j.at("cnn_params"));
    }

  private:
    void build() {
        qkernel_ = static_cast<int>(spec_.hp_long("qkernel_shape", 2));
        channels_ = static_cast<int>(spec_.hp_long("n_qchannels", 1));
        const int n = qkernel_ * qkernel_;
        require(n <= spec_.max_qubits, "Quanvolutional: filter register of ",
                n, " qubits exceeds the cap of ", spec_.max_qubits);
        filters_.clear();
        for (int c = 0; c < channels_; ++c) {
            sim::Circuit circ(n, n);
            for (int q = 0; q < n; ++q) {
                circ.ry(q, sim::AngleExpr::feature(q));
            }
            sim::append_random_layers(circ, 1,
                                      mix_seed(spec_.seed, 0x71756dULL, c),
                                      spec_.flags.no_entanglement);
            filters_.push_back(std::move(circ));
        }
    }

    int h_ = 0;
    int qkernel_ = 2;
    int channels_ = 1;
    double pixel_min_ = 0.0, pixel_max_ = 1.0;
    std::vector<sim::Circuit> filters_;
    classical::CNNModel cnn_;
};

// ---------------------------------------------------------------------------
// WeiNet: classical mixture of 16 shift-filter unitaries on an
// amplitude-embedded image.
// ---------------------------------------------------------------------------
class WeiNetModel : public Classifier {
  public:
    explicit WeiNetModel(ModelSpec spec) : Classifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        build(static_cast<int>(x.cols()));
        Rng rng(mix_seed(spec_.seed, 0x776569ULL));
        params_.clear();
        for (double f : filter_) { // mixture logits start at the filter
            params_.push_back(f);
        }
        detail::fill_small_normal(rng, params_, n_correlators_ + 1);

        // per-sample correlator features of all 16 shifted states
        std::vector<Eigen::MatrixXd> features(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            features[i] = shift_correlators(x.row(i).transpose());
        }
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(x.rows()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    loss += sample_loss_grad(features[idx], y[idx], p, grad,
                                             1.0 / batch.size());
                }
                return loss / batch.size();
            },
            {.learning_rate = spec_.hp_double("learning_rate", 0.001),
             .batch_size = 32,
             .max_steps = spec_.max_steps,
             .seed = spec_.seed});
        info_ = {std::move(result.loss_history), result.converged,
                 result.steps};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return sign_class(logit(shift_correlators(x), params_));
    }

    double probability_positive(const Eigen::VectorXd &x) const {
        return 1.0 / (1.0 + std::exp(-logit(shift_correlators(x), params_)));
    }

    /// 16 x n_correlators matrix: Z and ZZ readouts on the kept qubits for
    /// every shift-filter unitary.
    Eigen::MatrixXd shift_correlators(const Eigen::VectorXd &x) const {
        const std::vector<double> pixels(x.data(), x.data() + x.size());
        const auto base = sim::amplitude_embed(pixels, n_qubits_);
        Eigen::MatrixXd out(16, n_correlators_);
        for (int r = 0; r < 4; ++r) {
            for (int s = 0; s < 4; ++s) {
                const auto state = shifted_filtered(base, r, s);
                int col = 0;
                for (std::size_t a = 0; a < kept_.size(); ++a) {
                    out(r * 4 + s, col++) = sim::expectation(
                        state, sim::Observable::z_on(kept_[a], n_qubits_));
                }
                for (std::size_t a = 0; a < kept_.size(); ++a) {
                    for (std::size_t b = a + 1; b < kept_.size(); ++b) {
                        std::string w(n_qubits_, 'I');
                        w[kept_[a]] = 'Z';
                        w[kept_[b]] = 'Z';
                        out(r * 4 + s, col++) = sim::expectation(
                            state, sim::Observable({{1.0, w}}));
                    }
                }
            }
        }
        return out;
    }

    int n_correlators() const { return n_correlators_; }
    std::size_t parameter_count() const {
        return 16 + n_correlators_ + 1;
    }

    /// Softmax mixture over the 16 unitaries.
    Eigen::VectorXd mixture_weights(const std::vector<double> &p) const {
        Eigen::VectorXd logits(16);
        for (int i = 0; i < 16; ++i) {
            logits(i) = p[i];
        }
        const double m = logits.maxCoeff();
        Eigen::VectorXd w = (logits.array() - m).exp();
        return w / w.sum();
    }

    double sample_loss_grad(const Eigen::MatrixXd &correlators, int label,
                            const std::vector<double> &p,
                            std::vector<double> &grad, double weight) const {
        const Eigen::VectorXd mix = mixture_weights(p);
        const Eigen::VectorXd feat = correlators.transpose() * mix;
        Eigen::Map<const Eigen::VectorXd> w(p.data() + 16, n_correlators_);
        const double f = w.dot(feat) + p[16 + n_correlators_];
        const double margin = label * f;
        const double loss = margin > 0
                                ? std::log1p(std::exp(-margin))
                                : -margin + std::log1p(std::exp(margin));
        const double df = -label / (1.0 + std::exp(margin));

        Eigen::Map<Eigen::VectorXd> gw(grad.data() + 16, n_correlators_);
        gw += weight * df * feat;
        grad[16 + n_correlators_] += weight * df;
        // chain rule through the softmax for the mixture logits
        const Eigen::VectorXd dmix = correlators * w; // d f / d mix_i
        const double avg = mix.dot(dmix);
        for (int i = 0; i < 16; ++i) {
            grad[i] += weight * df * mix(i) * (dmix(i) - avg);
        }
        return loss;
    }

    double logit(const Eigen::MatrixXd &correlators,
                 const std::vector<double> &p) const {
        const Eigen::VectorXd mix = mixture_weights(p);
        const Eigen::VectorXd feat = correlators.transpose() * mix;
        Eigen::Map<const Eigen::VectorXd> w(p.data() + 16, n_correlators_);
        return w.dot(feat) + p[16 + n_correlators_];
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"pixels", h_ * h_},
                {"params", detail::vector_to_json(params_)}};
    }

    void restore(const json &j) {
        build(j.at("pixels").get<int>());
        params_ = detail::vector_from_json(j.at("params"));
    }

  private:
    void build(int n_pixels) {
        h_ = detail::image_side(n_pixels);
        require(h_ >= 4 && (h_ & (h_ - 1)) == 0,
                "WeiNet: image side must be a power of two >= 4 (pixel count "
                "a power of 4), got ",
                h_, "x", h_);
        n_qubits_ = 2 * static_cast<int>(std::lround(std::log2(h_)));
        require(n_qubits_ <= spec_.max_qubits, "WeiNet: register of ",
                n_qubits_, " qubits exceeds the cap of ", spec_.max_qubits);
        const int m = n_qubits_ / 2;
        // trace out the least significant row and column qubits (pooling)
        kept_.clear();
        for (int w = 0; w < n_qubits_; ++w) {
            if (w != m - 1 && w != n_qubits_ - 1) {
                kept_.push_back(w);
            }
        }
        const int nk = static_cast<int>(kept_.size());
        n_correlators_ = nk + nk * (nk - 1) / 2;
        filter_ = filter_values(spec_.hp_string("filter_type", "edge_detect"));
    }

    /// 3x3 classical kernels padded to 4x4, max-abs normalized.
    static std::vector<double> filter_values(const std::string &type) {
        std::vector<double> f3;
        if (type == "edge_detect") {
            f3 = {-1, -1, -1, -1, 8, -1, -1, -1, -1};
        } else if (type == "sharpen") {
            f3 = {0, -1, 0, -1, 5, -1, 0, -1, 0};
        } else if (type == "smooth") {
            f3 = {1, 2, 1, 2, 4, 2, 1, 2, 1};
        } else {
            throw InvalidArgument(
                format_msg("WeiNet: unknown filter_type '", type, "'"));
        }
        double max_abs = 0.0;
        for (double v : f3) {
            max_abs = std::max(max_abs, std::abs(v));
        }
        std::vector<double> f(16, 0.0);
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) {
                f[r * 4 + s] = f3[r * 3 + s] / max_abs;
            }
        }
        return f;
    }

    /// Q_(r,s): cyclic shift by (r, s) pixels followed by filter-derived RY
    /// rotations on the two pooling qubits.
    sim::StateVector shifted_filtered(const sim::StateVector &base, int r,
                                      int s) const {
        std::vector<sim::cplx> shifted(base.size());
        for (int i = 0; i < h_; ++i) {
            for (int j = 0; j < h_; ++j) {
                const int src = i * h_ + j;
                const int dst = ((i + r) % h_) * h_ + (j + s) % h_;
                shifted[dst] = base[src];
            }
        }
        auto state =
            sim::StateVector::from_amplitudes(n_qubits_, std::move(shifted));
        const int m = n_qubits_ / 2;
        const double eta = std::numbers::pi * filter_[r * 4 + s];
        const double zeta = std::numbers::pi * filter_[s * 4 + r];
        state.apply_single(sim::detail::ry_matrix(eta), m - 1);
        state.apply_single(sim::detail::ry_matrix(zeta), n_qubits_ - 1);
        return state;
    }

    int h_ = 0;
    int n_qubits_ = 0;
    int n_correlators_ = 0;
    std::vector<int> kept_;
    std::vector<double> filter_;
    std::vector<double> params_; // [16 mixture logits, w, bias]
};

} // namespace qmlbench::models
