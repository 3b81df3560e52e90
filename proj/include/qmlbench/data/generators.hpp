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
 * The six synthetic data-generation procedures. Every generator is a pure
 * function of its parameters and seed; the train/test split (ratio 0.2) is
 * derived from the same seed.
 */
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qmlbench/classical/scaler.hpp"
#include "qmlbench/data/dataset.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench::data {

namespace detail {

inline double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2]
                      : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// +1 where value - median > 0, else -1; ties at the median go negative,
/// which balances classes up to one sample.
inline std::vector<int> median_binarize(const std::vector<double> &raw) {
    const double med = median(raw);
    std::vector<int> labels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        labels[i] = raw[i] - med > 0.0 ? 1 : -1;
    }
    return labels;
}

} // namespace detail

/// Uniform hypercube inputs kept outside a margin of 0.02 d around the
/// hyperplane orthogonal to (1, ..., 1); labels by median-shifted sign.
inline Dataset gen_linearly_separable(int d, int n, std::uint64_t seed) {
    require(d >= 2, "linearly_separable: d must be >= 2, got ", d);
    require(n >= 2, "linearly_separable: need at least two samples");
    Rng rng(seed);
    const double margin = 0.02 * d;
    Dataset ds;
    ds.inputs.resize(n, d);
    std::vector<double> raw(n);
    const long attempt_cap = 1000L * n;
    long attempts = 0;
    int kept = 0;
    while (kept < n) {
        require(attempts++ < attempt_cap,
                "linearly_separable: rejection sampling exceeded ", attempt_cap,
                " attempts");
        Eigen::VectorXd x(d);
        for (int j = 0; j < d; ++j) {
            x(j) = rng.uniform(-1.0, 1.0);
        }
        const double score = x.sum(); // w = (1, ..., 1)
        if (std::abs(score) <= margin) {
            continue;
        }
        ds.inputs.row(kept) = x.transpose();
        raw[kept] = score;
        ++kept;
    }
    ds.labels = detail::median_binarize(raw);
    ds.config = {{"generator", "linearly_separable"},
                 {"d", d},
                 {"n", n},
                 {"margin", margin},
                 {"seed", seed}};
    assign_split(ds, 0.2, seed);
    ds.validate();
    return ds;
}

/// Noisy bars (+1, constant rows) and stripes (-1, constant columns).
inline Dataset gen_bars_and_stripes(int width, int n, double sigma,
                                    std::uint64_t seed) {
    require(width >= 2, "bars_and_stripes: width must be >= 2");
    require(sigma >= 0.0, "bars_and_stripes: sigma must be >= 0");
    Rng rng(seed);
    Dataset ds;
    ds.inputs.resize(n, width * width);
    ds.labels.resize(n);
    for (int s = 0; s < n; ++s) {
        const int label = rng.uniform() < 0.5 ? -1 : 1;
        ds.labels[s] = label;
        std::vector<double> fill(width);
        for (auto &f : fill) {
            f = rng.uniform() < 0.5 ? -1.0 : 1.0;
        }
        for (int i = 0; i < width; ++i) {
            for (int j = 0; j < width; ++j) {
                // label -1: columns constant; label +1: rows constant
                ds.inputs(s, i * width + j) = label == -1 ? fill[j] : fill[i];
            }
        }
        for (int p = 0; p < width * width; ++p) {
            ds.inputs(s, p) += rng.normal(0.0, sigma);
        }
    }
    ds.config = {{"generator", "bars_and_stripes"},
                 {"width", width},
                 {"n", n},
                 {"sigma", sigma},
                 {"seed", seed}};
    assign_split(ds, 0.2, seed);
    ds.validate();
    return ds;
}

/// Inputs tanh-embedded from an m-dimensional latent manifold, labelled by a
/// random single-layer network on the latent coordinates, median-binarized.
inline Dataset gen_hidden_manifold(int d, int n, int m, std::uint64_t seed) {
    require(m >= 1, "hidden_manifold: m must be >= 1");
    require(d >= 1, "hidden_manifold: d must be >= 1");
    Rng rng(seed);
    Eigen::MatrixXd c(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            c(i, j) = rng.normal();
        }
    }
    Eigen::MatrixXd f(d, m);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) {
            f(i, j) = rng.normal();
        }
    }
    Eigen::VectorXd offsets(d);
    for (int i = 0; i < d; ++i) {
        offsets(i) = rng.normal();
    }
    Eigen::MatrixXd w(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            w(i, j) = rng.normal();
        }
    }
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) {
        v(i) = rng.normal();
    }

    Dataset ds;
    ds.inputs.resize(n, d);
    std::vector<double> raw(n);
    const double root_m = std::sqrt(static_cast<double>(m));
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd latent = c.row(i).transpose();
        const Eigen::VectorXd embedded = f * latent / root_m;
        for (int j = 0; j < d; ++j) {
            ds.inputs(i, j) = std::tanh(embedded(j) - offsets(j));
        }
        raw[i] = v.dot((w * latent / root_m).array().tanh().matrix());
    }
    ds.labels = detail::median_binarize(raw);
    ds.config = {{"generator", "hidden_manifold"},
                 {"d", d},
                 {"n", n},
                 {"m", m},
                 {"seed", seed}};
    assign_split(ds, 0.2, seed);
    ds.validate();
    return ds;
}

/// Two Fourier-series curves of degree D embedded into d dimensions; the +1
/// class curve is offset by delta in every dimension, noise is N(0, eps^2).
inline Dataset gen_two_curves(int d, int n, int degree, double delta,
                              double eps, std::uint64_t seed) {
    require(degree >= 1, "two_curves: degree must be >= 1");
    require(d >= 1, "two_curves: d must be >= 1");
    Rng rng(seed);
    Eigen::MatrixXd alpha(d, degree + 1), beta(d, degree + 1);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k <= degree; ++k) {
            alpha(i, k) = rng.uniform();
            beta(i, k) = rng.uniform();
        }
    }
    Dataset ds;
    ds.inputs.resize(n, d);
    ds.labels.resize(n);
    const int half = n / 2;
    for (int s = 0; s < n; ++s) {
        const double t = rng.uniform();
        const bool positive = s < half;
        ds.labels[s] = positive ? 1 : -1;
        for (int i = 0; i < d; ++i) {
            double value = 0.0;
            for (int k = 0; k <= degree; ++k) {
                value += alpha(i, k) * std::cos(k * t) +
                         beta(i, k) * std::sin(k * t);
            }
            if (positive) {
                value += delta;
            }
            ds.inputs(s, i) = value + rng.normal(0.0, eps);
        }
    }
    ds.config = {{"generator", "two_curves"},
                 {"d", d},
                 {"n", n},
                 {"degree", degree},
                 {"delta", delta},
                 {"eps", eps},
                 {"seed", seed}};
    assign_split(ds, 0.2, seed);
    ds.validate();
    return ds;
}

/// +1 when the number of perceptrons answering +1 is even.
inline int parity_label(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                        const Eigen::VectorXd &latent) {
    int ones = 0;
    for (Eigen::Index j = 0; j < w.rows(); ++j) {
        if (w.row(j).dot(latent) + b(j) > 0.0) {
            ++ones;
        }
    }
    return ones % 2 == 0 ? 1 : -1;
}

/// Latent points labelled by the parity of k perceptrons on the latent space,
/// embedded linearly into d dimensions, balanced by oversampling, then
/// standardized.
inline Dataset gen_hyperplanes_parity(int d, int n, int k, int m,
                                      std::uint64_t seed) {
    require(m >= 1 && m <= d, "hyperplanes_parity: need 1 <= m <= d, got m = ",
            m, ", d = ", d);
    require(k >= 1, "hyperplanes_parity: k must be >= 1");
    require(n % 2 == 0, "hyperplanes_parity: n must be even for balance");
    Rng rng(seed);
    Eigen::MatrixXd embed(d, m);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) {
            embed(i, j) = rng.uniform();
        }
    }
    Eigen::MatrixXd w(k, m);
    Eigen::VectorXd b(k);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < m; ++i) {
            w(j, i) = rng.uniform(-1.0, 1.0);
        }
        b(j) = rng.uniform(-1.0, 1.0);
    }

    std::vector<Eigen::VectorXd> pos, neg;
    const long cap = 100L * n;
    long drawn = 0;
    while ((static_cast<int>(pos.size()) < n / 2 ||
            static_cast<int>(neg.size()) < n / 2)) {
        require(drawn++ < cap,
                "hyperplanes_parity: could not balance classes within ", cap,
                " samples");
        Eigen::VectorXd latent(m);
        for (int i = 0; i < m; ++i) {
            latent(i) = rng.normal();
        }
        const int label = parity_label(w, b, latent);
        auto &bucket = label == 1 ? pos : neg;
        if (static_cast<int>(bucket.size()) < n / 2) {
            bucket.push_back(embed * latent);
        }
    }

    Dataset ds;
    ds.inputs.resize(n, d);
    ds.labels.resize(n);
    for (int i = 0; i < n / 2; ++i) {
        ds.inputs.row(2 * i) = pos[i].transpose();
        ds.labels[2 * i] = 1;
        ds.inputs.row(2 * i + 1) = neg[i].transpose();
        ds.labels[2 * i + 1] = -1;
    }
    classical::StandardScaler scaler;
    scaler.fit(ds.inputs);
    ds.inputs = scaler.transform(ds.inputs);
    ds.config = {{"generator", "hyperplanes_parity"},
                 {"d", d},
                 {"n", n},
                 {"k", k},
                 {"m", m},
                 {"seed", seed}};
    assign_split(ds, 0.2, seed);
    ds.validate();
    return ds;
}

} // namespace qmlbench::data
