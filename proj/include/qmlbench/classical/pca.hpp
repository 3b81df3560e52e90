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
 * Principal component analysis via the covariance eigendecomposition, with a
 * deterministic sign convention: the largest-magnitude entry of every
 * component is made positive.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "qmlbench/common.hpp"

namespace qmlbench::classical {

class PCAProjector {
  public:
    /// components: d_out x d_in with orthonormal rows ordered by descending
    /// eigenvalue; means are the training column means.
    PCAProjector() = default;
    PCAProjector(Eigen::MatrixXd components, Eigen::VectorXd means,
                 Eigen::VectorXd eigenvalues)
        : components_(std::move(components)), means_(std::move(means)),
          eigenvalues_(std::move(eigenvalues)) {}

    const Eigen::MatrixXd &components() const { return components_; }
    const Eigen::VectorXd &means() const { return means_; }
    const Eigen::VectorXd &eigenvalues() const { return eigenvalues_; }

    Eigen::VectorXd transform(const Eigen::VectorXd &x) const {
        require(x.size() == means_.size(), "pca_transform: expected ",
                means_.size(), " features, got ", x.size());
        return components_ * (x - means_);
    }

    Eigen::MatrixXd transform(const Eigen::MatrixXd &x) const {
        return (x.rowwise() - means_.transpose()) * components_.transpose();
    }

  private:
    Eigen::MatrixXd components_;
    Eigen::VectorXd means_;
    Eigen::VectorXd eigenvalues_;
};

inline PCAProjector pca_fit(const Eigen::MatrixXd &train, int d_out) {
    const Eigen::Index n = train.rows();
    const Eigen::Index d_in = train.cols();
    require(d_out >= 1, "pca_fit: d_out must be >= 1");
    require(d_out <= std::min<Eigen::Index>(n, d_in), "pca_fit: d_out = ",
            d_out, " exceeds min(n_samples, n_features) = ",
            std::min<Eigen::Index>(n, d_in));
    const Eigen::VectorXd means = train.colwise().mean();
    const Eigen::MatrixXd centered = train.rowwise() - means.transpose();
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / std::max<Eigen::Index>(n - 1, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    // Eigen returns ascending eigenvalues; take the top d_out in reverse.
    Eigen::MatrixXd components(d_out, d_in);
    Eigen::VectorXd eigenvalues(d_out);
    for (int k = 0; k < d_out; ++k) {
        const Eigen::Index src = d_in - 1 - k;
        Eigen::VectorXd v = es.eigenvectors().col(src);
        Eigen::Index max_idx = 0;
        v.cwiseAbs().maxCoeff(&max_idx);
        if (v(max_idx) < 0.0) {
            v = -v;
        }
        components.row(k) = v.transpose();
        eigenvalues(k) = es.eigenvalues()(src);
    }
    return PCAProjector(std::move(components), means, std::move(eigenvalues));
}

inline Eigen::VectorXd pca_transform(const PCAProjector &p,
                                     const Eigen::VectorXd &x) {
    return p.transform(x);
}

} // namespace qmlbench::classical
