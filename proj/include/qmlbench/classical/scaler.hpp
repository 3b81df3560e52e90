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
 * Feature scaling fitted on training data only.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "qmlbench/common.hpp"

namespace qmlbench::classical {

/// Per-feature (x - mean) / std; zero-variance features use std := 1 so a
/// constant column maps to all zeros.
class StandardScaler {
  public:
    void fit(const Eigen::MatrixXd &train) {
        require(train.rows() > 0, "StandardScaler: empty training matrix");
        mean_ = train.colwise().mean();
        Eigen::MatrixXd centered = train.rowwise() - mean_.transpose();
        std_ = (centered.array().square().colwise().sum() / train.rows())
                   .sqrt()
                   .matrix();
        for (Eigen::Index j = 0; j < std_.size(); ++j) {
            if (std_(j) == 0.0) {
                std_(j) = 1.0;
            }
        }
        fitted_ = true;
    }

    Eigen::VectorXd transform(const Eigen::VectorXd &x) const {
        require(fitted_, "StandardScaler: transform before fit");
        require(x.size() == mean_.size(), "StandardScaler: expected ",
                mean_.size(), " features, got ", x.size());
        return (x - mean_).cwiseQuotient(std_);
    }

    Eigen::MatrixXd transform(const Eigen::MatrixXd &x) const {
        require(fitted_, "StandardScaler: transform before fit");
        return ((x.rowwise() - mean_.transpose()).array().rowwise() /
                std_.transpose().array())
            .matrix();
    }

    bool fitted() const { return fitted_; }
    const Eigen::VectorXd &mean() const { return mean_; }
    const Eigen::VectorXd &stddev() const { return std_; }

    void restore(Eigen::VectorXd mean, Eigen::VectorXd std) {
        mean_ = std::move(mean);
        std_ = std::move(std);
        fitted_ = true;
    }

  private:
    Eigen::VectorXd mean_;
    Eigen::VectorXd std_;
    bool fitted_ = false;
};

/// Per-feature min-max map onto [-pi/2, pi/2], the natural interval for angle
/// embeddings. Constant features map to 0.
class AngleScaler {
  public:
    void fit(const Eigen::MatrixXd &train) {
        require(train.rows() > 0, "AngleScaler: empty training matrix");
        min_ = train.colwise().minCoeff();
        max_ = train.colwise().maxCoeff();
        fitted_ = true;
    }

    Eigen::VectorXd transform(const Eigen::VectorXd &x) const {
        require(fitted_, "AngleScaler: transform before fit");
        require(x.size() == min_.size(), "AngleScaler: expected ", min_.size(),
                " features, got ", x.size());
        constexpr double half_pi = std::numbers::pi / 2.0;
        Eigen::VectorXd out(x.size());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double range = max_(j) - min_(j);
            out(j) = range == 0.0
                         ? 0.0
                         : -half_pi +
                               std::numbers::pi * (x(j) - min_(j)) / range;
        }
        return out;
    }

    Eigen::MatrixXd transform(const Eigen::MatrixXd &x) const {
        Eigen::MatrixXd out(x.rows(), x.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            out.row(i) = transform(Eigen::VectorXd(x.row(i))).transpose();
        }
        return out;
    }

    bool fitted() const { return fitted_; }
    const Eigen::VectorXd &min() const { return min_; }
    const Eigen::VectorXd &max() const { return max_; }

    void restore(Eigen::VectorXd lo, Eigen::VectorXd hi) {
        min_ = std::move(lo);
        max_ = std::move(hi);
        fitted_ = true;
    }

  private:
    Eigen::VectorXd min_;
    Eigen::VectorXd max_;
    bool fitted_ = false;
};

} // namespace qmlbench::classical
