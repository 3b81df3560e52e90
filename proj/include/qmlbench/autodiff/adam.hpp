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
 * Adam optimizer with the usual defaults (beta1 = 0.9, beta2 = 0.999,
 * eps = 1e-8); only the learning rate varies across models.
 */
#pragma once

#include <cmath>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::autodiff {

struct AdamState {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long step_count = 0;
    std::vector<double> m; // first moments
    std::vector<double> v; // second moments

    explicit AdamState(std::size_t n_params, double lr = 0.01)
        : learning_rate(lr), m(n_params, 0.0), v(n_params, 0.0) {}
};

/// One bias-corrected Adam update, in place.
inline void adam_step(AdamState &state, std::vector<double> &params,
                      const std::vector<double> &grad) {
    require(params.size() == state.m.size() && grad.size() == state.m.size(),
            "adam_step: size mismatch (", params.size(), " params, ",
            grad.size(), " gradient entries, state for ", state.m.size(), ")");
    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw TrainingError(
                "adam_step: non-finite gradient, training aborted");
        }
    }
    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
        state.v[i] =
            state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -=
            state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
}

} // namespace qmlbench::autodiff
