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
 * Common classifier contract: fit on raw features and +-1 labels, predict a
 * +-1 label (sign(0) := +1 everywhere), serialize the trained state.
 */
#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "qmlbench/classical/scaler.hpp"
#include "qmlbench/common.hpp"
#include "qmlbench/models/model_spec.hpp"

namespace qmlbench::models {

struct TrainInfo {
    std::vector<double> loss_history;
    bool converged = true;
    long steps = 0;
};

inline int sign_class(double value) { return value >= 0.0 ? 1 : -1; }

class Classifier {
  public:
    explicit Classifier(ModelSpec spec) : spec_(std::move(spec)) {
        spec_.validate_flags();
    }
    virtual ~Classifier() = default;

    virtual void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) = 0;
    virtual int predict(const Eigen::VectorXd &x) const = 0;

    /// Trained state as JSON; model_from_json in factory.hpp restores it.
    virtual json save() const = 0;

    const ModelSpec &spec() const { return spec_; }
    const TrainInfo &train_info() const { return info_; }

    double accuracy(const Eigen::MatrixXd &x, const std::vector<int> &y) const {
        require(x.rows() == static_cast<Eigen::Index>(y.size()),
                "accuracy: ", y.size(), " labels for ", x.rows(), " rows");
        int correct = 0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            correct += predict(x.row(i).transpose()) == y[i] ? 1 : 0;
        }
        return x.rows() == 0 ? 0.0
                             : static_cast<double>(correct) / x.rows();
    }

  protected:
    static void check_labels(const std::vector<int> &y) {
        for (int label : y) {
            require(label == 1 || label == -1, "labels must be +-1, got ",
                    label);
        }
    }

    ModelSpec spec_;
    TrainInfo info_;
};

/// Kernel-based classifiers additionally expose their kernel function and
/// training Gram matrix for the analysis tools.
class KernelClassifier : public Classifier {
  public:
    using Classifier::Classifier;
    virtual double kernel(const Eigen::VectorXd &a,
                          const Eigen::VectorXd &b) const = 0;
    virtual const Eigen::MatrixXd &gram() const = 0;
};

} // namespace qmlbench::models
