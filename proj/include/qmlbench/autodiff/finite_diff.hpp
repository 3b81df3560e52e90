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
 * Central finite differences over a black-box loss.
 */
#pragma once

#include <functional>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::autodiff {

using LossFn = std::function<double(const std::vector<double> &)>;

inline std::vector<double> finite_diff_grad(const LossFn &loss,
                                            std::vector<double> params,
                                            double h) {
    require(h > 0.0, "finite_diff_grad: step must be positive, got ", h);
    std::vector<double> grad(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double orig = params[k];
        params[k] = orig + h;
        const double plus = loss(params);
        params[k] = orig - h;
        const double minus = loss(params);
        params[k] = orig;
        grad[k] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

} // namespace qmlbench::autodiff
