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
 * Minibatch Adam training loop shared by all gradient-trained models:
 * seeded epoch shuffling, the 400-step convergence window (checked at every
 * step once filled) and a hard step cap.
 */
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "qmlbench/autodiff/adam.hpp"
#include "qmlbench/autodiff/convergence.hpp"
#include "qmlbench/common.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench::autodiff {

struct TrainResult {
    std::vector<double> loss_history;
    bool converged = false;
    long steps = 0;
};

struct TrainOptions {
    double learning_rate = 0.01;
    int batch_size = 32;
    long max_steps = 10000;
    std::uint64_t seed = 0;
};

/// `loss_grad(batch, params, grad_out)` returns the batch loss and writes the
/// gradient (same length as params) into grad_out.
using BatchLossGrad = std::function<double(
    std::span<const int>, const std::vector<double> &, std::vector<double> &)>;

inline TrainResult train_minibatch_adam(int n_samples,
                                        std::vector<double> &params,
                                        const BatchLossGrad &loss_grad,
                                        const TrainOptions &opts) {
    require(n_samples >= 1, "train: need at least one sample");
    require(opts.max_steps >= 1, "train: max_steps must be >= 1");
    const int batch_size = std::min(opts.batch_size, n_samples);

    AdamState adam(params.size(), opts.learning_rate);
    LossWindow window;
    TrainResult result;
    Rng rng(mix_seed(opts.seed, 0x7261696eULL));

    std::vector<int> order = rng.permutation(n_samples);
    std::size_t cursor = 0;
    std::vector<int> batch(batch_size);
    std::vector<double> grad(params.size());

    for (long step = 0; step < opts.max_steps; ++step) {
        for (int b = 0; b < batch_size; ++b) {
            if (cursor == order.size()) {
                rng.shuffle(order);
                cursor = 0;
            }
            batch[b] = order[cursor++];
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        const double loss = loss_grad(batch, params, grad);
        if (!std::isfinite(loss)) {
            throw TrainingError(format_msg(
                "training aborted: non-finite loss at step ", step));
        }
        adam_step(adam, params, grad);
        result.loss_history.push_back(loss);
        window.push(loss);
        result.steps = step + 1;
        if (window.has_converged()) {
            result.converged = true;
            break;
        }
    }
    return result;
}

} // namespace qmlbench::autodiff
