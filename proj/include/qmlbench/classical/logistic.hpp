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
 * Binary logistic regression on +-1 labels, trained by full-batch gradient
 * descent with a backtracking line search (the loss never increases).
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::classical {

struct LogisticOptions {
    double l2 = 1e-4;       // ridge strength on the weights (not the bias)
    int max_iter = 500;
    double grad_tolerance = 1e-6;
    double initial_step = 1.0;
};

class LogisticModel {
  public:
    /// Mean cross entropy log(1 + exp(-y f)) + 0.5 l2 ||w||^2.
    static double loss(const Eigen::MatrixXd &x, const std::vector<int> &y,
                       const Eigen::VectorXd &w, double b, double l2) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            const double margin = y[i] * (x.row(i).dot(w) + b);
            // log(1 + exp(-m)) computed stably
            total += margin > 0 ? std::log1p(std::exp(-margin))
                                : -margin + std::log1p(std::exp(margin));
        }
        return total / x.rows() + 0.5 * l2 * w.squaredNorm();
    }

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y,
             const LogisticOptions &opts = {}) {
        const Eigen::Index n = x.rows();
        require(n > 0, "logistic_fit: empty training set");
        require(static_cast<Eigen::Index>(y.size()) == n, "logistic_fit: ",
                y.size(), " labels for ", n, " rows");
        for (int label : y) {
            require(label == 1 || label == -1,
                    "logistic_fit: labels must be +-1");
        }
        w_ = Eigen::VectorXd::Zero(x.cols());
        b_ = 0.0;
        loss_history_.clear();
        double current = loss(x, y, w_, b_, opts.l2);
        loss_history_.push_back(current);

        for (int iter = 0; iter < opts.max_iter; ++iter) {
            Eigen::VectorXd grad_w = opts.l2 * w_;
            double grad_b = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double margin = y[i] * (x.row(i).dot(w_) + b_);
                const double s = -y[i] / (1.0 + std::exp(margin));
                grad_w += (s / n) * x.row(i).transpose();
                grad_b += s / n;
            }
            const double gnorm =
                std::sqrt(grad_w.squaredNorm() + grad_b * grad_b);
            if (gnorm < opts.grad_tolerance) {
                break;
            }
            double step = opts.initial_step;
            while (step > 1e-12) {
                const Eigen::VectorXd w_try = w_ - step * grad_w;
                const double b_try = b_ - step * grad_b;
                const double trial = loss(x, y, w_try, b_try, opts.l2);
                if (trial <= current) {
                    w_ = w_try;
                    b_ = b_try;
                    current = trial;
                    break;
                }
                step /= 2.0;
            }
            loss_history_.push_back(current);
            if (step <= 1e-12) {
                break;
            }
        }
    }

    double decision(const Eigen::VectorXd &x) const {
        return x.dot(w_) + b_;
    }

    int predict(const Eigen::VectorXd &x) const {
        return decision(x) >= 0.0 ? 1 : -1;
    }

    const Eigen::VectorXd &weights() const { return w_; }
    double bias() const { return b_; }
    const std::vector<double> &loss_history() const { return loss_history_; }

    void restore(Eigen::VectorXd w, double b) {
        w_ = std::move(w);
        b_ = b;
    }

  private:
    Eigen::VectorXd w_;
    double b_ = 0.0;
    std::vector<double> loss_history_;
};

} // namespace qmlbench::classical
