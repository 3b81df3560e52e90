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
 * Small convolutional network: conv(32) -> maxpool -> conv(64) -> maxpool ->
 * dense(128) -> dense(1), ReLU activations, sigmoid output logit, trained
 * with Adam on the binary cross entropy. Convolutions use stride 1 with
 * "same" zero padding; pooling is 2x2 with stride 2.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qmlbench/autodiff/trainer.hpp"
#include "qmlbench/common.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench::classical {

struct CNNOptions {
    int kernel_shape = 3;
    double learning_rate = 0.001;
    int batch_size = 32;
    long max_steps = 10000;
    std::uint64_t seed = 0;
};

/// One sample is a stack of square channel images, stored channel-major.
struct ImageTensor {
    int channels = 1;
    int height = 0;
    std::vector<double> data; // size channels * height * height

    double at(int c, int i, int j) const {
        return data[(static_cast<std::size_t>(c) * height + i) * height + j];
    }
    double &at(int c, int i, int j) {
        return data[(static_cast<std::size_t>(c) * height + i) * height + j];
    }
};

class CNNModel {
  public:
    static constexpr int kConv1Channels = 32;
    static constexpr int kConv2Channels = 64;
    static constexpr int kDenseUnits = 128;

    void fit(const std::vector<ImageTensor> &images, const std::vector<int> &y,
             const CNNOptions &opts = {}) {
        require(!images.empty(), "cnn_fit: empty training set");
        require(images.size() == y.size(), "cnn_fit: ", y.size(),
                " labels for ", images.size(), " images");
        opts_ = opts;
        in_channels_ = images.front().channels;
        in_height_ = images.front().height;
        require(in_height_ >= opts.kernel_shape, "cnn_fit: image of size ",
                in_height_, " is smaller than the kernel ", opts.kernel_shape);
        init_shapes();
        params_ = initial_params(opts.seed);

        autodiff::TrainOptions train_opts{
            .learning_rate = opts.learning_rate,
            .batch_size = opts.batch_size,
            .max_steps = opts.max_steps,
            .seed = opts.seed,
        };
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(images.size()), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                double loss = 0.0;
                for (int idx : batch) {
                    loss += sample_loss_grad(images[idx], y[idx], p, grad,
                                             1.0 / batch.size());
                }
                return loss / batch.size();
            },
            train_opts);
        loss_history_ = std::move(result.loss_history);
        converged_ = result.converged;
    }

    double logit(const ImageTensor &img) const {
        Workspace ws;
        return forward(img, params_, ws);
    }

    double probability_positive(const ImageTensor &img) const {
        return 1.0 / (1.0 + std::exp(-logit(img)));
    }

    int predict(const ImageTensor &img) const {
        return logit(img) >= 0.0 ? 1 : -1;
    }

    double dataset_loss(const std::vector<ImageTensor> &images,
                        const std::vector<int> &y,
                        const std::vector<double> &p) const {
        double loss = 0.0;
        for (std::size_t i = 0; i < images.size(); ++i) {
            Workspace ws;
            const double f = forward(images[i], p, ws);
            const double margin = y[i] * f;
            loss += margin > 0 ? std::log1p(std::exp(-margin))
                               : -margin + std::log1p(std::exp(margin));
        }
        return loss / images.size();
    }

    const std::vector<double> &parameters() const { return params_; }
    std::vector<double> &mutable_parameters() { return params_; }
    const std::vector<double> &loss_history() const { return loss_history_; }
    bool converged() const { return converged_; }

    /// Loss+gradient of one sample; exposed for the finite-difference test.
    double sample_loss_grad(const ImageTensor &img, int label,
                            const std::vector<double> &p,
                            std::vector<double> &grad, double weight) const {
        Workspace ws;
        const double f = forward(img, p, ws);
        const double margin = label * f;
        const double loss = margin > 0
                                ? std::log1p(std::exp(-margin))
                                : -margin + std::log1p(std::exp(margin));
        const double dl_df = -label / (1.0 + std::exp(margin));
        backward(img, p, ws, dl_df * weight, grad);
        return loss;
    }

    void prepare(int channels, int height, const CNNOptions &opts) {
        opts_ = opts;
        in_channels_ = channels;
        in_height_ = height;
        init_shapes();
        params_.assign(total_params_, 0.0);
    }

    /// Post-ReLU output of the first convolution; used by shape tests.
    ImageTensor first_feature_map(const ImageTensor &img) const {
        ImageTensor out;
        conv_forward(img, kConv1Channels, params_.data() + conv1_w_,
                     params_.data() + conv1_b_, true, out);
        return out;
    }

    std::size_t parameter_count() const { return total_params_; }

  private:
    struct Workspace {
        ImageTensor conv1, pool1, conv2, pool2;
        std::vector<int> pool1_arg, pool2_arg;
        Eigen::VectorXd flat, dense1;
    };

    static int pooled(int h) { return h >= 2 ? h / 2 : h; }

    void init_shapes() {
        const int k = opts_.kernel_shape;
        conv1_w_ = 0;
        conv1_b_ = conv1_w_ + static_cast<std::size_t>(kConv1Channels) *
                                  in_channels_ * k * k;
        conv2_w_ = conv1_b_ + kConv1Channels;
        conv2_b_ = conv2_w_ + static_cast<std::size_t>(kConv2Channels) *
                                  kConv1Channels * k * k;
        h1_ = pooled(in_height_);
        h2_ = pooled(h1_);
        flat_size_ = kConv2Channels * h2_ * h2_;
        dense1_w_ = conv2_b_ + kConv2Channels;
        dense1_b_ = dense1_w_ + static_cast<std::size_t>(kDenseUnits) * flat_size_;
        dense2_w_ = dense1_b_ + kDenseUnits;
        dense2_b_ = dense2_w_ + kDenseUnits;
        total_params_ = dense2_b_ + 1;
    }

    std::vector<double> initial_params(std::uint64_t seed) const {
        std::vector<double> p(total_params_, 0.0);
        Rng rng(mix_seed(seed, 0x636e6eULL));
        const int k = opts_.kernel_shape;
        auto he_fill = [&](std::size_t off, std::size_t count, int fan_in) {
            const double scale = std::sqrt(2.0 / fan_in);
            for (std::size_t i = 0; i < count; ++i) {
                p[off + i] = rng.normal(0.0, scale);
            }
        };
        he_fill(conv1_w_, conv1_b_ - conv1_w_, in_channels_ * k * k);
        he_fill(conv2_w_, conv2_b_ - conv2_w_, kConv1Channels * k * k);
        he_fill(dense1_w_, dense1_b_ - dense1_w_, flat_size_);
        he_fill(dense2_w_, dense2_b_ - dense2_w_, kDenseUnits);
        return p;
    }

    /// "Same" padding offsets: for kernel k the window for output (i, j)
    /// starts at i - (k-1)/2 (extra padding goes to the bottom/right).
    void conv_forward(const ImageTensor &in, int out_channels,
                      const double *w, const double *b, bool relu,
                      ImageTensor &out) const {
        const int k = opts_.kernel_shape;
        const int h = in.height;
        const int lead = (k - 1) / 2;
        out.channels = out_channels;
        out.height = h;
        out.data.assign(static_cast<std::size_t>(out_channels) * h * h, 0.0);
        for (int oc = 0; oc < out_channels; ++oc) {
            for (int i = 0; i < h; ++i) {
                for (int j = 0; j < h; ++j) {
                    double acc = b[oc];
                    for (int ic = 0; ic < in.channels; ++ic) {
                        for (int di = 0; di < k; ++di) {
                            const int si = i - lead + di;
                            if (si < 0 || si >= h) {
                                continue;
                            }
                            for (int dj = 0; dj < k; ++dj) {
                                const int sj = j - lead + dj;
                                if (sj < 0 || sj >= h) {
                                    continue;
                                }
                                acc += w[((static_cast<std::size_t>(oc) *
                                               in.channels +
                                           ic) * k + di) * k + dj] *
                                       in.at(ic, si, sj);
                            }
                        }
                    }
                    out.at(oc, i, j) = relu ? std::max(0.0, acc) : acc;
                }
            }
        }
    }

    void conv_backward(const ImageTensor &in, const ImageTensor &out,
                       const ImageTensor &d_out, const double *w, double *gw,
                       double *gb, ImageTensor *d_in) const {
        const int k = opts_.kernel_shape;
        const int h = in.height;
        const int lead = (k - 1) / 2;
        if (d_in) {
            d_in->channels = in.channels;
            d_in->height = h;
            d_in->data.assign(in.data.size(), 0.0);
        }
        for (int oc = 0; oc < out.channels; ++oc) {
            for (int i = 0; i < h; ++i) {
                for (int j = 0; j < h; ++j) {
                    double g = d_out.at(oc, i, j);
                    if (out.at(oc, i, j) <= 0.0) {
                        continue; // ReLU gate
                    }
                    gb[oc] += g;
                    for (int ic = 0; ic < in.channels; ++ic) {
                        for (int di = 0; di < k; ++di) {
                            const int si = i - lead + di;
                            if (si < 0 || si >= h) {
                                continue;
                            }
                            for (int dj = 0; dj < k; ++dj) {
                                const int sj = j - lead + dj;
                                if (sj < 0 || sj >= h) {
                                    continue;
                                }
                                const std::size_t widx =
                                    ((static_cast<std::size_t>(oc) *
                                          in.channels +
                                      ic) * k + di) * k + dj;
                                gw[widx] += g * in.at(ic, si, sj);
                                if (d_in) {
                                    d_in->at(ic, si, sj) += g * w[widx];
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    void pool_forward(const ImageTensor &in, ImageTensor &out,
                      std::vector<int> &argmax) const {
        const int h = in.height;
        if (h < 2) {
            out = in;
            argmax.assign(in.data.size(), 0);
            for (std::size_t i = 0; i < in.data.size(); ++i) {
                argmax[i] = static_cast<int>(i);
            }
            return;
        }
        const int oh = h / 2;
        out.channels = in.channels;
        out.height = oh;
        out.data.assign(static_cast<std::size_t>(in.channels) * oh * oh, 0.0);
        argmax.assign(out.data.size(), 0);
        for (int c = 0; c < in.channels; ++c) {
            for (int i = 0; i < oh; ++i) {
                for (int j = 0; j < oh; ++j) {
                    double best = -std::numeric_limits<double>::infinity();
                    int best_idx = 0;
                    for (int di = 0; di < 2; ++di) {
                        for (int dj = 0; dj < 2; ++dj) {
                            const int si = 2 * i + di, sj = 2 * j + dj;
                            const int idx = (c * h + si) * h + sj;
                            if (in.data[idx] > best) {
                                best = in.data[idx];
                                best_idx = idx;
                            }
                        }
                    }
                    out.at(c, i, j) = best;
                    argmax[(static_cast<std::size_t>(c) * oh + i) * oh + j] =
                        best_idx;
                }
            }
        }
    }

    double forward(const ImageTensor &img, const std::vector<double> &p,
                   Workspace &ws) const {
        require(img.channels == in_channels_ && img.height == in_height_,
                "cnn: input shape mismatch");
        conv_forward(img, kConv1Channels, p.data() + conv1_w_,
                     p.data() + conv1_b_, true, ws.conv1);
        pool_forward(ws.conv1, ws.pool1, ws.pool1_arg);
        conv_forward(ws.pool1, kConv2Channels, p.data() + conv2_w_,
                     p.data() + conv2_b_, true, ws.conv2);
        pool_forward(ws.conv2, ws.pool2, ws.pool2_arg);
        ws.flat = Eigen::Map<const Eigen::VectorXd>(ws.pool2.data.data(),
                                                    flat_size_);
        Eigen::Map<const Eigen::MatrixXd> w1(p.data() + dense1_w_, kDenseUnits,
                                             flat_size_);
        Eigen::Map<const Eigen::VectorXd> b1(p.data() + dense1_b_, kDenseUnits);
        ws.dense1 = (w1 * ws.flat + b1).cwiseMax(0.0);
        Eigen::Map<const Eigen::VectorXd> w2(p.data() + dense2_w_, kDenseUnits);
        return w2.dot(ws.dense1) + p[dense2_b_];
    }

    void backward(const ImageTensor &img, const std::vector<double> &p,
                  const Workspace &ws, double dl_df,
                  std::vector<double> &grad) const {
        Eigen::Map<const Eigen::VectorXd> w2(p.data() + dense2_w_, kDenseUnits);
        Eigen::Map<Eigen::VectorXd> gw2(grad.data() + dense2_w_, kDenseUnits);
        gw2 += dl_df * ws.dense1;
        grad[dense2_b_] += dl_df;
        Eigen::VectorXd d_dense1 = dl_df * w2;
        for (int i = 0; i < kDenseUnits; ++i) {
            if (ws.dense1(i) <= 0.0) {
                d_dense1(i) = 0.0;
            }
        }
        Eigen::Map<const Eigen::MatrixXd> w1(p.data() + dense1_w_, kDenseUnits,
                                             flat_size_);
        Eigen::Map<Eigen::MatrixXd> gw1(grad.data() + dense1_w_, kDenseUnits,
                                        flat_size_);
        Eigen::Map<Eigen::VectorXd> gb1(grad.data() + dense1_b_, kDenseUnits);
        gw1.noalias() += d_dense1 * ws.flat.transpose();
        gb1 += d_dense1;
        Eigen::VectorXd d_flat = w1.transpose() * d_dense1;

        ImageTensor d_pool2{ws.pool2.channels, ws.pool2.height, {}};
        d_pool2.data.assign(ws.pool2.data.size(), 0.0);
        for (std::size_t i = 0; i < d_pool2.data.size(); ++i) {
            d_pool2.data[i] = d_flat(static_cast<Eigen::Index>(i));
        }
        ImageTensor d_conv2{ws.conv2.channels, ws.conv2.height, {}};
        d_conv2.data.assign(ws.conv2.data.size(), 0.0);
        for (std::size_t i = 0; i < ws.pool2_arg.size(); ++i) {
            d_conv2.data[ws.pool2_arg[i]] += d_pool2.data[i];
        }
        ImageTensor d_pool1;
        conv_backward(ws.pool1, ws.conv2, d_conv2, p.data() + conv2_w_,
                      grad.data() + conv2_w_, grad.data() + conv2_b_,
                      &d_pool1);
        ImageTensor d_conv1{ws.conv1.channels, ws.conv1.height, {}};
        d_conv1.data.assign(ws.conv1.data.size(), 0.0);
        for (std::size_t i = 0; i < ws.pool1_arg.size(); ++i) {
            d_conv1.data[ws.pool1_arg[i]] += d_pool1.data[i];
        }
        conv_backward(img, ws.conv1, d_conv1, p.data() + conv1_w_,
                      grad.data() + conv1_w_, grad.data() + conv1_b_, nullptr);
    }

    CNNOptions opts_;
    int in_channels_ = 1;
    int in_height_ = 0;
    int h1_ = 0, h2_ = 0, flat_size_ = 0;
    std::size_t conv1_w_ = 0, conv1_b_ = 0, conv2_w_ = 0, conv2_b_ = 0;
    std::size_t dense1_w_ = 0, dense1_b_ = 0, dense2_w_ = 0, dense2_b_ = 0;
    std::size_t total_params_ = 0;
    std::vector<double> params_;
    std::vector<double> loss_history_;
    bool converged_ = false;
};

} // namespace qmlbench::classical
