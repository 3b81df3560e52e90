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
 * The out-of-the-box classical baselines behind the shared classifier
 * contract: an MLP, an RBF support vector classifier and the small CNN.
 */
#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <vector>

#include "qmlbench/classical/cnn.hpp"
#include "qmlbench/classical/mlp.hpp"
#include "qmlbench/classical/svm.hpp"
#include "qmlbench/models/circuit_models.hpp"
#include "qmlbench/models/classifier.hpp"
#include "qmlbench/models/conv_models.hpp"

namespace qmlbench::models {

class MLPClassifierModel : public Classifier {
  public:
    explicit MLPClassifierModel(ModelSpec spec)
        : Classifier(std::move(spec)) {}

    static std::vector<int> parse_hidden_sizes(const std::string &text) {
        std::vector<int> sizes;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            sizes.push_back(std::stoi(item));
        }
        require(!sizes.empty(), "MLP: empty hidden_layer_sizes");
        return sizes;
    }

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        d_ = static_cast<int>(x.cols());
        hidden_ = parse_hidden_sizes(spec_.hp_string("hidden_layer_sizes",
                                                     "100"));
        alpha_ = spec_.hp_double("alpha", 0.0001);
        mlp_.fit(spec_.input_scale * x, y,
                 {.hidden_layer_sizes = hidden_,
                  .learning_rate = spec_.hp_double("learning_rate", 0.001),
                  .alpha = alpha_,
                  .seed = spec_.seed});
        info_ = {mlp_.loss_history(), mlp_.converged(),
                 static_cast<long>(mlp_.loss_history().size())};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return mlp_.predict(spec_.input_scale * x);
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"d", d_},
                {"params", detail::vector_to_json(mlp_.parameters())}};
    }

    void restore(const json &j) {
        d_ = j.at("d").get<int>();
        hidden_ = parse_hidden_sizes(spec_.hp_string("hidden_layer_sizes",
                                                     "100"));
        alpha_ = spec_.hp_double("alpha", 0.0001);
        mlp_.restore(detail::vector_from_json(j.at("params")), d_, hidden_,
                     alpha_);
    }

  private:
    int d_ = 0;
    std::vector<int> hidden_;
    double alpha_ = 0.0001;
    classical::MLPModel mlp_;
};

class SVCModel : public KernelClassifier {
  public:
    explicit SVCModel(ModelSpec spec) : KernelClassifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        gamma_ = spec_.hp_double("gamma", 0.1);
        const Eigen::MatrixXd xs = spec_.input_scale * x;
        svm_ = classical::SVMModel::from_rbf(xs, y, gamma_,
                                             spec_.hp_double("C", 1.0));
        gram_.resize(xs.rows(), xs.rows());
        for (Eigen::Index i = 0; i < xs.rows(); ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                gram_(i, j) = gram_(j, i) =
                    std::exp(-gamma_ * (xs.row(i) - xs.row(j)).squaredNorm());
            }
        }
        info_ = TrainInfo{};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return svm_.predict_rbf(spec_.input_scale * x);
    }

    double kernel(const Eigen::VectorXd &a,
                  const Eigen::VectorXd &b) const override {
        return std::exp(-gamma_ * (spec_.input_scale * (a - b)).squaredNorm());
    }

    const Eigen::MatrixXd &gram() const override { return gram_; }
    const classical::SVMModel &svm() const { return svm_; }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"gamma", gamma_},
                {"bias", svm_.bias()},
                {"dual_coef", detail::eigen_to_json(svm_.dual_coef())},
                {"support", detail::eigen_to_json(svm_.support_vectors())}};
    }

    void restore(const json &j) {
        gamma_ = j.at("gamma").get<double>();
        svm_.restore(detail::eigen_from_json(j.at("dual_coef")).col(0),
                     j.at("bias").get<double>(), gamma_,
                     detail::eigen_from_json(j.at("support")));
    }

  private:
    double gamma_ = 0.1;
    classical::SVMModel svm_;
    Eigen::MatrixXd gram_;
};

class CNNClassifierModel : public Classifier {
  public:
    explicit CNNClassifierModel(ModelSpec spec)
        : Classifier(std::move(spec)) {}

    void fit(const Eigen::MatrixXd &x, const std::vector<int> &y) override {
        check_labels(y);
        h_ = detail::image_side(static_cast<int>(x.cols()));
        std::vector<classical::ImageTensor> images(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            images[i] = to_image(x.row(i).transpose());
        }
        cnn_.fit(images, y,
                 {.kernel_shape =
                      static_cast<int>(spec_.hp_long("kernel_shape", 3)),
                  .learning_rate = spec_.hp_double("learning_rate", 0.001),
                  .max_steps = spec_.max_steps,
                  .seed = spec_.seed});
        info_ = {cnn_.loss_history(), cnn_.converged(),
                 static_cast<long>(cnn_.loss_history().size())};
    }

    int predict(const Eigen::VectorXd &x) const override {
        return cnn_.predict(to_image(x));
    }

    json save() const override {
        return {{"spec", spec_.to_json()},
                {"h", h_},
                {"params", detail::vector_to_json(cnn_.parameters())}};
    }

    void restore(const json &j) {
        h_ = j.at("h").get<int>();
        cnn_.prepare(1, h_,
                     {.kernel_shape =
                          static_cast<int>(spec_.hp_long("kernel_shape", 3)),
                      .seed = spec_.seed});
        cnn_.mutable_parameters() = detail::vector_from_json(j.at("params"));
    }

  private:
    classical::ImageTensor to_image(const Eigen::VectorXd &x) const {
        classical::ImageTensor t;
        t.channels = 1;
        t.height = h_;
        t.data.resize(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            t.data[i] = spec_.input_scale * x(i);
        }
        return t;
    }

    int h_ = 0;
    classical::CNNModel cnn_;
};

} // namespace qmlbench::models
