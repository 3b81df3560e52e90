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

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "qmlbench/classical/cnn.hpp"
#include "qmlbench/classical/logistic.hpp"
#include "qmlbench/classical/mlp.hpp"
#include "qmlbench/classical/pca.hpp"
#include "qmlbench/classical/scaler.hpp"
#include "qmlbench/classical/svm.hpp"
#include "qmlbench/rng.hpp"

using namespace qmlbench;
using classical::AngleScaler;
using classical::CNNModel;
using classical::ImageTensor;
using classical::LogisticModel;
using classical::MLPModel;
using classical::StandardScaler;
using classical::SVMModel;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

/// Reference SVM dual solver: projected gradient ascent where the projection
/// onto the box intersected with the equality constraint alpha . y = 0 is
/// computed by bisection over the constraint multiplier. Independent of the
/// SMO implementation under test.
Eigen::VectorXd reference_dual(const Eigen::MatrixXd &k,
                               const std::vector<int> &y, double C,
                               double kkt_tol = 1e-8) {
    const Eigen::Index n = k.rows();
    Eigen::MatrixXd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            q(i, j) = y[i] * y[j] * k(i, j);
        }
    }
    auto project = [&](Eigen::VectorXd a) {
        auto clipped_dot = [&](double lam) {
            double s = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                s += y[i] * std::clamp(a(i) - lam * y[i], 0.0, C);
            }
            return s;
        };
        double lo = -(C + a.cwiseAbs().maxCoeff()), hi = -lo;
        for (int it = 0; it < 200; ++it) {
            const double mid = (lo + hi) / 2;
            if (clipped_dot(mid) > 0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double lam = (lo + hi) / 2;
        for (Eigen::Index i = 0; i < n; ++i) {
            a(i) = std::clamp(a(i) - lam * y[i], 0.0, C);
        }
        return a;
    };
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q, Eigen::EigenvaluesOnly);
    const double step = 1.0 / std::max(es.eigenvalues().maxCoeff(), 1e-8);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    for (long it = 0; it < 200000; ++it) {
        const Eigen::VectorXd grad = Eigen::VectorXd::Ones(n) - q * alpha;
        alpha = project(alpha + step * grad);
        if (it % 100 == 0) {
            // maximal KKT violation, same optimality measure as the theory
            double m_up = -1e300, m_low = 1e300;
            const Eigen::VectorXd g = q * alpha - Eigen::VectorXd::Ones(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double v = -y[i] * g(i);
                const bool up = (y[i] == 1 && alpha(i) < C - 1e-12) ||
                                (y[i] == -1 && alpha(i) > 1e-12);
                const bool low = (y[i] == -1 && alpha(i) < C - 1e-12) ||
                                 (y[i] == 1 && alpha(i) > 1e-12);
                if (up) m_up = std::max(m_up, v);
                if (low) m_low = std::min(m_low, v);
            }
            if (m_up - m_low < kkt_tol) {
                break;
            }
        }
    }
    return alpha;
}

double rbf(const Eigen::VectorXd &a, const Eigen::VectorXd &b, double gamma) {
    return std::exp(-gamma * (a - b).squaredNorm());
}

} // namespace

TEST_CASE("standard scaler maps constant columns to zero") {
    Eigen::MatrixXd x(3, 2);
    x << 5.0, 1.0, 5.0, 2.0, 5.0, 3.0;
    StandardScaler s;
    s.fit(x);
    const Eigen::MatrixXd t = s.transform(x);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(t(i, 0) == 0.0);
    }
}

TEST_CASE("standard scaler centers symmetric training data") {
    Eigen::MatrixXd x(2, 1);
    x << -1.0, 1.0;
    StandardScaler s;
    s.fit(x);
    Eigen::VectorXd mid(1);
    mid << 0.0;
    REQUIRE(s.transform(mid)(0) == 0.0);
}

TEST_CASE("standard scaler output has zero mean and unit variance") {
    const Eigen::MatrixXd x = random_matrix(50, 4, 3);
    StandardScaler s;
    s.fit(x);
    const Eigen::MatrixXd t = s.transform(x);
    for (int j = 0; j < 4; ++j) {
        REQUIRE(std::abs(t.col(j).mean()) < 1e-10);
        const double var = t.col(j).squaredNorm() / 50.0;
        REQUIRE(var == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("scalers reject transform before fit") {
    StandardScaler s;
    Eigen::VectorXd v(2);
    v << 1, 2;
    REQUIRE_THROWS_AS(s.transform(v), InvalidArgument);
    AngleScaler a;
    REQUIRE_THROWS_AS(a.transform(v), InvalidArgument);
}

TEST_CASE("angle scaler maps the training range onto [-pi/2, pi/2]") {
    Eigen::MatrixXd x(3, 1);
    x << -2.0, 0.0, 6.0;
    AngleScaler a;
    a.fit(x);
    Eigen::VectorXd lo(1), hi(1);
    lo << -2.0;
    hi << 6.0;
    REQUIRE(a.transform(lo)(0) == Catch::Approx(-std::numbers::pi / 2));
    REQUIRE(a.transform(hi)(0) == Catch::Approx(std::numbers::pi / 2));
}

TEST_CASE("pca recovers axis-aligned components with the sign rule") {
    Rng rng(11);
    Eigen::MatrixXd x(400, 2);
    for (int i = 0; i < 400; ++i) {
        x(i, 0) = rng.normal(0.0, 2.0);
        x(i, 1) = rng.normal(0.0, 1.0);
    }
    const auto p = classical::pca_fit(x, 2);
    REQUIRE(std::abs(p.components()(0, 0)) > 0.99);
    REQUIRE(p.components()(0, 0) > 0.0); // largest entry fixed positive
    // rows orthonormal
    const Eigen::MatrixXd gram = p.components() * p.components().transpose();
    REQUIRE((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
            1e-8);
}

TEST_CASE("full-rank pca reconstructs the data") {
    const Eigen::MatrixXd x = random_matrix(30, 3, 5);
    const auto p = classical::pca_fit(x, 3);
    for (int i = 0; i < x.rows(); ++i) {
        const Eigen::VectorXd z = p.transform(Eigen::VectorXd(x.row(i)));
        const Eigen::VectorXd back = p.components().transpose() * z + p.means();
        REQUIRE((back - x.row(i).transpose()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("pca retained variance equals the top eigenvalue sum") {
    const Eigen::MatrixXd x = random_matrix(100, 5, 7);
    const auto p = classical::pca_fit(x, 2);
    const Eigen::MatrixXd z = p.transform(x);
    const Eigen::MatrixXd centered = z.rowwise() - z.colwise().mean();
    const double retained =
        (centered.transpose() * centered / (x.rows() - 1)).trace();

    const Eigen::MatrixXd xc = x.rowwise() - x.colwise().mean();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        xc.transpose() * xc / (x.rows() - 1), Eigen::EigenvaluesOnly);
    const double top2 = es.eigenvalues()(4) + es.eigenvalues()(3);
    REQUIRE(retained == Catch::Approx(top2).margin(1e-8));
}

TEST_CASE("pca preserves inner products within the component subspace") {
    const Eigen::MatrixXd x = random_matrix(40, 4, 9);
    const auto p = classical::pca_fit(x, 2);
    const Eigen::MatrixXd proj = p.components().transpose() * p.components();
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const Eigen::VectorXd a = x.row(i).transpose() - p.means();
            const Eigen::VectorXd b = x.row(j).transpose() - p.means();
            const double subspace = (proj * a).dot(proj * b);
            const double coords = p.transform(Eigen::VectorXd(x.row(i)))
                                      .dot(p.transform(Eigen::VectorXd(x.row(j))));
            REQUIRE(subspace == Catch::Approx(coords).margin(1e-8));
        }
    }
}

TEST_CASE("pca rejects too many output dimensions") {
    const Eigen::MatrixXd x = random_matrix(10, 3, 1);
    REQUIRE_THROWS_AS(classical::pca_fit(x, 4), InvalidArgument);
}

TEST_CASE("svm separates a two-point problem") {
    Eigen::MatrixXd x(2, 1);
    x << -1.0, 1.0;
    const std::vector<int> y{-1, 1};
    const auto m = SVMModel::from_rbf(x, y, 0.5, 1.0);
    REQUIRE(m.predict_rbf(x.row(0).transpose()) == -1);
    REQUIRE(m.predict_rbf(x.row(1).transpose()) == 1);
}

TEST_CASE("duplicating training points leaves the decision function alone") {
    Rng rng(13);
    Eigen::MatrixXd x(12, 2);
    std::vector<int> y;
    for (int i = 0; i < 12; ++i) {
        const int label = i % 2 == 0 ? 1 : -1;
        x(i, 0) = label * 1.0 + rng.normal(0.0, 0.3);
        x(i, 1) = rng.normal();
        y.push_back(label);
    }
    const auto base = SVMModel::from_rbf(x, y, 1.0, 10.0);

    Eigen::MatrixXd x2(24, 2);
    x2 << x, x;
    std::vector<int> y2 = y;
    y2.insert(y2.end(), y.begin(), y.end());
    const auto doubled = SVMModel::from_rbf(x2, y2, 1.0, 10.0);

    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd probe(2);
        probe << rng.uniform(-2, 2), rng.uniform(-2, 2);
        REQUIRE(base.decision_rbf(probe) ==
                Catch::Approx(doubled.decision_rbf(probe)).margin(1e-6));
    }
}

TEST_CASE("smo agrees with the projected-gradient reference on XOR data") {
    Rng rng(17);
    Eigen::MatrixXd x(20, 2);
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
        const int qa = i % 2, qb = (i / 2) % 2;
        x(i, 0) = (qa ? 1.0 : -1.0) + rng.normal(0.0, 0.15);
        x(i, 1) = (qb ? 1.0 : -1.0) + rng.normal(0.0, 0.15);
        y.push_back(qa == qb ? 1 : -1);
    }
    const double gamma = 1.0, C = 10.0;
    const auto m = SVMModel::from_rbf(x, y, gamma, C);

    Eigen::MatrixXd k(20, 20);
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            k(i, j) = rbf(x.row(i).transpose(), x.row(j).transpose(), gamma);
        }
    }
    const Eigen::VectorXd ref_alpha = reference_dual(k, y, C);
    // reference bias from the KKT conditions on free support vectors
    double b_sum = 0.0;
    int b_cnt = 0;
    for (int i = 0; i < 20; ++i) {
        if (ref_alpha(i) > 1e-8 && ref_alpha(i) < C - 1e-8) {
            double f = 0.0;
            for (int j = 0; j < 20; ++j) {
                f += ref_alpha(j) * y[j] * k(i, j);
            }
            b_sum += y[i] - f;
            ++b_cnt;
        }
    }
    REQUIRE(b_cnt > 0);
    const double ref_b = b_sum / b_cnt;

    int mismatches = 0;
    for (int i = 0; i < 20; ++i) {
        double ref_f = ref_b;
        for (int j = 0; j < 20; ++j) {
            ref_f += ref_alpha(j) * y[j] * k(i, j);
        }
        const int ref_pred = ref_f >= 0 ? 1 : -1;
        if (m.predict_rbf(x.row(i).transpose()) != ref_pred) {
            ++mismatches;
        }
    }
    REQUIRE(mismatches == 0);
    REQUIRE(m.duality_gap() < 1e-3 * 20 * C); // scaled sanity bound
    REQUIRE(m.kkt_violation() < 1e-3);
}

TEST_CASE("svm decision function is invariant under row permutation") {
    Rng rng(23);
    Eigen::MatrixXd x(16, 2);
    std::vector<int> y;
    for (int i = 0; i < 16; ++i) {
        const int label = i < 8 ? 1 : -1;
        x(i, 0) = label + rng.normal(0.0, 0.4);
        x(i, 1) = rng.normal();
        y.push_back(label);
    }
    const auto base = SVMModel::from_rbf(x, y, 0.7, 5.0);
    const auto perm = Rng(77).permutation(16);
    Eigen::MatrixXd xp(16, 2);
    std::vector<int> yp(16);
    for (int i = 0; i < 16; ++i) {
        xp.row(i) = x.row(perm[i]);
        yp[i] = y[perm[i]];
    }
    const auto shuffled = SVMModel::from_rbf(xp, yp, 0.7, 5.0);
    int mismatches = 0;
    for (int i = 0; i < 16; ++i) {
        if (base.predict_rbf(x.row(i).transpose()) !=
            shuffled.predict_rbf(x.row(i).transpose())) {
            ++mismatches;
        }
    }
    REQUIRE(mismatches == 0);
}

TEST_CASE("svm rejects bad kernels and degenerate labels") {
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3, -1
    REQUIRE_THROWS_AS(SVMModel::from_precomputed(bad, {1, -1}, 1.0),
                      InvalidArgument);
    Eigen::MatrixXd ok(2, 2);
    ok << 1.0, 0.2, 0.2, 1.0;
    REQUIRE_THROWS_AS(SVMModel::from_precomputed(ok, {1, 1}, 1.0),
                      InvalidArgument);
}

TEST_CASE("sign(0) resolves to the positive class") {
    REQUIRE(SVMModel::sign_class(0.0) == 1);
}

TEST_CASE("logistic regression on a separable pair") {
    Eigen::MatrixXd x(2, 1);
    x << -1.0, 1.0;
    LogisticModel m;
    m.fit(x, {-1, 1});
    REQUIRE(m.predict(x.row(0).transpose()) == -1);
    REQUIRE(m.predict(x.row(1).transpose()) == 1);
}

TEST_CASE("logistic regression with one class predicts that class") {
    Eigen::MatrixXd x(4, 1);
    x << -2.0, -0.5, 0.5, 2.0;
    LogisticModel m;
    m.fit(x, {1, 1, 1, 1});
    for (int i = 0; i < 4; ++i) {
        REQUIRE(m.predict(x.row(i).transpose()) == 1);
    }
}

TEST_CASE("logistic loss decreases monotonically") {
    Rng rng(29);
    Eigen::MatrixXd x(100, 2);
    std::vector<int> y;
    for (int i = 0; i < 100; ++i) {
        const int label = i % 2 == 0 ? 1 : -1;
        x(i, 0) = 2.0 * label + rng.normal(0.0, 0.5);
        x(i, 1) = rng.normal();
        y.push_back(label);
    }
    LogisticModel m;
    m.fit(x, y);
    const auto &hist = m.loss_history();
    REQUIRE(hist.size() > 2);
    for (std::size_t i = 1; i < hist.size(); ++i) {
        REQUIRE(hist[i] <= hist[i - 1] + 1e-9);
    }
    int correct = 0;
    for (int i = 0; i < 100; ++i) {
        correct += m.predict(x.row(i).transpose()) == y[i] ? 1 : 0;
    }
    REQUIRE(correct == 100);
}

TEST_CASE("mlp reaches high accuracy on separable 2d data") {
    Rng rng(41);
    Eigen::MatrixXd x(100, 2);
    std::vector<int> y;
    for (int i = 0; i < 100; ++i) {
        const int label = i % 2 == 0 ? 1 : -1;
        x(i, 0) = rng.uniform(-1, 1);
        x(i, 1) = rng.uniform(-1, 1);
        const double margin = x(i, 0) + x(i, 1);
        x(i, 0) += label * 0.8 - margin / 2;
        x(i, 1) += label * 0.8 - margin / 2;
        y.push_back(label);
    }
    MLPModel m;
    m.fit(x, y, {.hidden_layer_sizes = {16},
                 .learning_rate = 0.01,
                 .alpha = 0.0001,
                 .seed = 3});
    int correct = 0;
    for (int i = 0; i < 100; ++i) {
        correct += m.predict(x.row(i).transpose()) == y[i] ? 1 : 0;
    }
    REQUIRE(correct >= 95);
    REQUIRE(m.training_loss(x, y) <= m.initial_loss(x, y, 3));
}

TEST_CASE("mlp gradient matches finite differences") {
    Rng rng(43);
    Eigen::MatrixXd x(6, 2);
    std::vector<int> y;
    for (int i = 0; i < 6; ++i) {
        x(i, 0) = rng.normal();
        x(i, 1) = rng.normal();
        y.push_back(i % 2 == 0 ? 1 : -1);
    }
    MLPModel m;
    // tiny fit call to set shapes; then test the gradient API directly
    m.fit(x, y, {.hidden_layer_sizes = {3}, .max_epochs = 1, .seed = 5});
    std::vector<double> params(m.parameter_count());
    Rng prng(55);
    for (auto &p : params) {
        p = prng.normal(0.0, 0.5);
    }
    std::vector<int> batch{0, 1, 2, 3, 4, 5};
    std::vector<double> grad(params.size(), 0.0);
    m.batch_loss_grad(x, y, batch, params, grad);
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double h = 1e-6;
        auto pp = params, pm = params;
        pp[k] += h;
        pm[k] -= h;
        std::vector<double> dummy(params.size(), 0.0);
        const double lp = m.batch_loss_grad(x, y, batch, pp, dummy);
        std::fill(dummy.begin(), dummy.end(), 0.0);
        const double lm = m.batch_loss_grad(x, y, batch, pm, dummy);
        const double fd = (lp - lm) / (2 * h);
        if (std::abs(fd) > 1e-2) {
            REQUIRE(std::abs(grad[k] - fd) / std::abs(fd) < 1e-5);
        } else {
            REQUIRE(std::abs(grad[k] - fd) < 1e-6);
        }
    }
}

TEST_CASE("huge regularization collapses the mlp to the majority class") {
    Rng rng(47);
    Eigen::MatrixXd x(60, 2);
    std::vector<int> y;
    for (int i = 0; i < 60; ++i) {
        const int label = i < 40 ? 1 : -1;
        x(i, 0) = label + rng.normal(0.0, 0.2);
        x(i, 1) = rng.normal();
        y.push_back(label);
    }
    MLPModel m;
    m.fit(x, y, {.hidden_layer_sizes = {8},
                 .learning_rate = 0.01,
                 .alpha = 1e3,
                 .max_epochs = 200,
                 .seed = 7});
    double max_weight = 0.0;
    for (double p : m.parameters()) {
        max_weight = std::max(max_weight, std::abs(p));
    }
    int positive = 0;
    for (int i = 0; i < 60; ++i) {
        positive += m.predict(x.row(i).transpose()) == 1 ? 1 : 0;
    }
    // predictions collapse to a single class once the weights shrink away
    REQUIRE((positive == 60 || positive == 0));
    REQUIRE(max_weight < 1.0);
}

namespace {

ImageTensor make_image(const std::vector<double> &pixels, int h) {
    ImageTensor t;
    t.channels = 1;
    t.height = h;
    t.data = pixels;
    return t;
}

std::pair<std::vector<ImageTensor>, std::vector<int>>
noisy_bars_stripes(int n, int h, double sigma, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ImageTensor> images;
    std::vector<int> labels;
    for (int s = 0; s < n; ++s) {
        const int label = rng.uniform() < 0.5 ? -1 : 1;
        std::vector<double> img(h * h, 0.0);
        std::vector<double> fill(h);
        for (auto &f : fill) {
            f = rng.uniform() < 0.5 ? -1.0 : 1.0;
        }
        for (int i = 0; i < h; ++i) {
            for (int j = 0; j < h; ++j) {
                img[i * h + j] = label == -1 ? fill[j] : fill[i];
            }
        }
        for (auto &p : img) {
            p += rng.normal(0.0, sigma);
        }
        images.push_back(make_image(img, h));
        labels.push_back(label);
    }
    return {images, labels};
}

} // namespace

TEST_CASE("cnn learns 4x4 bars and stripes") {
    auto [images, labels] = noisy_bars_stripes(250, 4, 0.5, 61);
    std::vector<ImageTensor> train(images.begin(), images.begin() + 200);
    std::vector<int> ytrain(labels.begin(), labels.begin() + 200);
    CNNModel m;
    m.fit(train, ytrain,
          {.kernel_shape = 2, .learning_rate = 0.01, .seed = 8});
    int correct = 0;
    for (int i = 200; i < 250; ++i) {
        correct += m.predict(images[i]) == labels[i] ? 1 : 0;
    }
    REQUIRE(correct >= static_cast<int>(0.95 * 50));
}

TEST_CASE("convolution of a constant image is constant away from borders") {
    CNNModel m;
    m.prepare(1, 6, {.kernel_shape = 3, .seed = 1});
    std::vector<double> &p = m.mutable_parameters();
    // first filter = averaging kernel, everything else untouched (zeros)
    for (int i = 0; i < 9; ++i) {
        p[i] = 1.0 / 9.0;
    }
    const ImageTensor constant = make_image(std::vector<double>(36, 0.7), 6);
    const ImageTensor fmap = m.first_feature_map(constant);
    // zero padding perturbs a 1-pixel border; the interior must be constant
    const double center = fmap.at(0, 2, 2);
    for (int i = 1; i < 5; ++i) {
        for (int j = 1; j < 5; ++j) {
            REQUIRE(fmap.at(0, i, j) == Catch::Approx(center).margin(1e-12));
        }
    }
    REQUIRE(center == Catch::Approx(0.7).margin(1e-12));
}

TEST_CASE("cnn rejects images smaller than the kernel") {
    auto [images, labels] = noisy_bars_stripes(8, 4, 0.1, 71);
    CNNModel m;
    REQUIRE_THROWS_AS(m.fit(images, labels, {.kernel_shape = 5}),
                      InvalidArgument);
}

TEST_CASE("cnn gradient matches finite differences on sampled coordinates") {
    auto [images, labels] = noisy_bars_stripes(3, 6, 0.3, 73);
    CNNModel m;
    m.prepare(1, 6, {.kernel_shape = 3, .seed = 5});
    std::vector<double> params(m.parameter_count());
    Rng rng(91);
    for (auto &p : params) {
        p = rng.normal(0.0, 0.3);
    }
    std::vector<double> grad(params.size(), 0.0);
    double loss = 0.0;
    for (int s = 0; s < 3; ++s) {
        loss += m.sample_loss_grad(images[s], labels[s], params, grad,
                                   1.0 / 3.0);
    }
    loss /= 3.0;
    auto loss_at = [&](const std::vector<double> &p) {
        return m.dataset_loss(images, labels, p);
    };
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = rng.uniform_index(params.size());
        const double h = 1e-5;
        auto pp = params, pm = params;
        pp[k] += h;
        pm[k] -= h;
        const double fd = (loss_at(pp) - loss_at(pm)) / (2 * h);
        if (std::abs(fd) > 1e-2) {
            REQUIRE(std::abs(grad[k] - fd) / std::abs(fd) < 1e-4);
        } else {
            REQUIRE(std::abs(grad[k] - fd) < 1e-5);
        }
    }
}
