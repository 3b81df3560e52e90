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
 * Loss-plateau convergence test over a 400-step window: with mu1 the mean of
 * the oldest 200 losses, mu2 and sigma2 the mean and population standard
 * deviation of the newest 200, training has converged once
 * |mu1 - mu2| < sigma2 / (2 sqrt(200)). A zero-variance window counts as
 * converged exactly when the two means coincide.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qmlbench::autodiff {

class LossWindow {
  public:
    static constexpr std::size_t kCapacity = 400;
    static constexpr std::size_t kHalf = kCapacity / 2;

    void push(double loss) {
        buffer_[head_] = loss;
        head_ = (head_ + 1) % kCapacity;
        if (count_ < kCapacity) {
            ++count_;
        }
        ++steps_;
    }

    bool full() const { return count_ == kCapacity; }
    long steps() const { return steps_; }

    /// Value pushed `age` steps before the newest one (age 0 = newest).
    double value_from_newest(std::size_t age) const {
        return buffer_[(head_ + kCapacity - 1 - age) % kCapacity];
    }

    bool has_converged() const {
        if (!full()) {
            return false;
        }
        double sum_old = 0.0, sum_new = 0.0;
        for (std::size_t age = 0; age < kHalf; ++age) {
            sum_new += value_from_newest(age);
            sum_old += value_from_newest(age + kHalf);
        }
        const double mu1 = sum_old / kHalf;
        const double mu2 = sum_new / kHalf;
        double var2 = 0.0;
        for (std::size_t age = 0; age < kHalf; ++age) {
            const double d = value_from_newest(age) - mu2;
            var2 += d * d;
        }
        const double sigma2 = std::sqrt(var2 / kHalf);
        if (sigma2 == 0.0) {
            return mu1 == mu2;
        }
        return std::abs(mu1 - mu2) <
               sigma2 / (2.0 * std::sqrt(static_cast<double>(kHalf)));
    }

  private:
    std::array<double, kCapacity> buffer_{};
    std::size_t head_ = 0;
    std::size_t count_ = 0;
    long steps_ = 0;
};

inline bool has_converged(const LossWindow &window) {
    return window.has_converged();
}

} // namespace qmlbench::autodiff
