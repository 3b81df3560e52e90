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
 * Fully connected ReLU network with a single sigmoid output logit, trained
 * with Adam on the binary cross entropy plus an L2 penalty on the weights.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qmlbench/autodiff/trainer.hpp"
#include "qmlbench/common.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench::classical {

struct MLPOptions {
    std::vector<int> hidden_layer_sizes{100};
    double learning_rate = 0.001;
    double alpha = 0.0001; // L2 on weights
    int batch_size = 32;
    int max_epochs = 3000;
    std::uint64_t seed = 0;
};

class MLPModel {
  public:
    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y,
             const MLPOptions &opts = {}) {
        const Eigen::Index n = x.rows();
        require(n > 0, "mlp_fit: empty training set");
        require(static_cast<Eigen::Index>(y.size()) == n, "mlp_fit: ",
                y.size(), " labels for ", n, " rows");
        opts_ = opts;
        init_shapes(static_cast<int>(x.cols()), opts.hidden_layer_sizes);
        params_ = initial_params(opts.seed);

        const long steps_per_epoch = (n + opts.batch_size - 1) / opts.batch_size;
        autodiff::TrainOptions train_opts{
            .learning_rate = opts.learning_rate,
            .batch_size = opts.batch_size,
            .max_steps = opts.max_epochs * steps_per_epoch,
            .seed = opts.seed,
        };
        auto result = autodiff::train_minibatch_adam(
            static_cast<int>(n), params_,
            [&](std::span<const int> batch, const std::vector<double> &p,
                std::vector<double> &grad) {
                return batch_loss_grad(x, y, batch, p, grad);
            },
            train_opts);
        loss_history_ = std::move(result.loss_history);
        converged_ = result.converged;
    }

    double logit(const Eigen::VectorXd &x) const {
        std::vector<Eigen::VectorXd> acts;
        return forward(params_, x, acts);
    }

    double probability_positive(const Eigen::VectorXd &x) const {
        return 1.0 / (1.0 + std::exp(-logit(x)));
    }

    int predict(const Eigen::VectorXd &x) const {
        return logit(x) >= 0.0 ? 1 : -1;
    }

    double training_loss(const Eigen::MatrixXd &x,
                         const std::vector<int> &y) const {
        return full_loss(params_, x, y);
    }

    double initial_loss(const Eigen::MatrixXd &x, const std::vector<int> &y,
                        std::uint64_t seed) const {
        return full_loss(initial_params(seed), x, y);
    }

    const std::vector<double> &loss_history() const { return loss_history_; }
    bool converged() const { return converged_; }
    const std::vector<double> &parameters() const { return params_; }
    std::size_t parameter_count() const { return total_params_; }

    /// Exposed for gradient tests: loss and gradient on an index batch.
    double batch_loss_grad(const Eigen::MatrixXd &x, const std::vector<int> &y,
                           std::span<const int> batch,
                           const std::vector<double> &p,
                           std::vector<double> &grad) const {
        double loss = 0.0;
        for (int idx : batch) {
            std::vector<Eigen::VectorXd> acts;
            const double f = forward(p, x.row(idx).transpose(), acts);
            const double margin = y[idx] * f;
            loss += margin > 0 ? std::log1p(std::exp(-margin))
                               : -margin + std::log1p(std::exp(margin));
            // dl/df = -y * sigmoid(-y f)
            const double dl_df = -y[idx] / (1.0 + std::exp(margin));
            backward(p, acts, dl_df / static_cast<double>(batch.size()), grad);
        }
        loss /= static_cast<double>(batch.size());
        // ridge on weight matrices only
        double reg = 0.0;
        for (std::size_t l = 0; l < shapes_.size(); ++l) {
            const auto [rows, cols, w_off, b_off] = shapes_[l];
            for (int i = 0; i < rows * cols; ++i) {
                reg += p[w_off + i] * p[w_off + i];
                grad[w_off + i] += opts_.alpha * p[w_off + i];
            }
        }
        return loss + 0.5 * opts_.alpha * reg;
    }

    void restore(std::vector<double> params, int d_in,
                 const std::vector<int> &hidden, double alpha) {
        init_shapes(d_in, hidden);
        opts_.alpha = alpha;
        opts_.hidden_layer_sizes = hidden;
        require(params.size() == total_params_, "mlp restore: expected ",
                total_params_, " parameters, got ", params.size());
        params_ = std::move(params);
    }

  private:
    double full_loss(const std::vector<double> &p, const Eigen::MatrixXd &x,
                     const std::vector<int> &y) const {
        double loss = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            std::vector<Eigen::VectorXd> acts;
            const double f = forward(p, x.row(i).transpose(), acts);
            const double margin = y[i] * f;
            loss += margin > 0 ? std::log1p(std::exp(-margin))
                               : -margin + std::log1p(std::exp(margin));
        }
        return loss / x.rows();
    }

    // (rows, cols, weight offset, bias offset) per layer
    using Shape = std::tuple<int, int, std::size_t, std::size_t>;

    void init_shapes(int d_in, const std::vector<int> &hidden) {
        shapes_.clear();
        std::size_t offset = 0;
        int in = d_in;
        auto add_layer = [&](int out) {
            const std::size_t w_off = offset;
            offset += static_cast<std::size_t>(out) * in;
            const std::size_t b_off = offset;
            offset += out;
            shapes_.emplace_back(out, in, w_off, b_off);
            in = out;
        };
        for (int h : hidden) {
            require(h >= 1, "mlp_fit: hidden layer size must be >= 1");
            add_layer(h);
        }
        add_layer(1);
        total_params_ = offset;
    }

    std::vector<double> initial_params(std::uint64_t seed) const {
        std::vector<double> p(total_params_, 0.0);
        Rng rng(mix_seed(seed, 0x6d6c70ULL));
        for (const auto &[rows, cols, w_off, b_off] : shapes_) {
            const double scale = std::sqrt(2.0 / cols);
            for (int i = 0; i < rows * cols; ++i) {
                p[w_off + i] = rng.normal(0.0, scale);
            }
        }
        return p;
    }

    /// Returns the output logit; `acts` holds the input and every
    /// post-activation hidden vector (needed for backprop).
    double forward(const std::vector<double> &p, const Eigen::VectorXd &x,
                   std::vector<Eigen::VectorXd> &acts) const {
        acts.clear();
        acts.push_back(x);
        Eigen::VectorXd h = x;
        for (std::size_t l = 0; l < shapes_.size(); ++l) {
            const auto [rows, cols, w_off, b_off] = shapes_[l];
            Eigen::Map<const Eigen::MatrixXd> w(p.data() + w_off, rows, cols);
            Eigen::Map<const Eigen::VectorXd> b(p.data() + b_off, rows);
            Eigen::VectorXd z = w * h + b;
            if (l + 1 < shapes_.size()) {
                z = z.cwiseMax(0.0); // ReLU on hidden layers
            }
            acts.push_back(z);
            h = std::move(z);
        }
        return h(0);
    }

    /// Accumulates d(loss)/d(params) into grad given dl/df for one sample.
    void backward(const std::vector<double> &p,
                  const std::vector<Eigen::VectorXd> &acts, double dl_df,
                  std::vector<double> &grad) const {
        Eigen::VectorXd delta(1);
        delta(0) = dl_df;
        for (std::size_t l = shapes_.size(); l-- > 0;) {
            const auto [rows, cols, w_off, b_off] = shapes_[l];
            Eigen::Map<const Eigen::MatrixXd> w(p.data() + w_off, rows, cols);
            Eigen::Map<Eigen::MatrixXd> gw(grad.data() + w_off, rows, cols);
            Eigen::Map<Eigen::VectorXd> gb(grad.data() + b_off, rows);
            const Eigen::VectorXd &input = acts[l];
            gw.noalias() += delta * input.transpose();
            gb += delta;
            if (l > 0) {
                Eigen::VectorXd prev = w.transpose() * delta;
                // ReLU mask of the previous post-activation
                for (Eigen::Index i = 0; i < prev.size(); ++i) {
                    if (acts[l](i) <= 0.0) {
                        prev(i) = 0.0;
                    }
                }
                delta = std::move(prev);
            }
        }
    }

    MLPOptions opts_;
    std::vector<Shape> shapes_;
    std::size_t total_params_ = 0;
    std::vector<double> params_;
    std::vector<double> loss_history_;
    bool converged_ = false;
};

} // namespace qmlbench::classical
