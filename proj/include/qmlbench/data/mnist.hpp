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
 * IDX-format MNIST ingestion (big-endian, magic 0x803 for images and 0x801
 * for labels), digit filtering to {3, 5}, and the PCA / coarse-grained
 * preprocessing pipelines. MNIST is an optional input; everything else in the
 * suite runs without external data.
 */
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "qmlbench/classical/pca.hpp"
#include "qmlbench/classical/scaler.hpp"
#include "qmlbench/data/dataset.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench::data {

struct IdxImages {
    int count = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels; // count * rows * cols
};

namespace detail {

inline std::uint32_t read_be32(std::istream &in) {
    std::uint8_t b[4];
    in.read(reinterpret_cast<char *>(b), 4);
    require(in.good(), "idx: unexpected end of file");
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
           (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

} // namespace detail

inline IdxImages read_idx_images(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "idx: cannot open ", path.string());
    const auto magic = detail::read_be32(in);
    require(magic == 0x00000803, "idx: bad image magic in ", path.string());
    IdxImages img;
    img.count = static_cast<int>(detail::read_be32(in));
    img.rows = static_cast<int>(detail::read_be32(in));
    img.cols = static_cast<int>(detail::read_be32(in));
    img.pixels.resize(static_cast<std::size_t>(img.count) * img.rows *
                      img.cols);
    in.read(reinterpret_cast<char *>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    require(in.gcount() == static_cast<std::streamsize>(img.pixels.size()),
            "idx: truncated image file ", path.string());
    return img;
}

inline std::vector<std::uint8_t>
read_idx_labels(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "idx: cannot open ", path.string());
    const auto magic = detail::read_be32(in);
    require(magic == 0x00000801, "idx: bad label magic in ", path.string());
    const int count = static_cast<int>(detail::read_be32(in));
    std::vector<std::uint8_t> labels(count);
    in.read(reinterpret_cast<char *>(labels.data()), count);
    require(in.gcount() == count, "idx: truncated label file ", path.string());
    return labels;
}

/// Bilinear resize with half-pixel-centre sampling; scale 1 is the identity.
inline Eigen::MatrixXd resize_bilinear(const Eigen::MatrixXd &src,
                                       int out_rows, int out_cols) {
    const int in_rows = static_cast<int>(src.rows());
    const int in_cols = static_cast<int>(src.cols());
    Eigen::MatrixXd out(out_rows, out_cols);
    const double row_scale = static_cast<double>(in_rows) / out_rows;
    const double col_scale = static_cast<double>(in_cols) / out_cols;
    for (int i = 0; i < out_rows; ++i) {
        double sr = (i + 0.5) * row_scale - 0.5;
        sr = std::clamp(sr, 0.0, static_cast<double>(in_rows - 1));
        const int r0 = static_cast<int>(std::floor(sr));
        const int r1 = std::min(r0 + 1, in_rows - 1);
        const double fr = sr - r0;
        for (int j = 0; j < out_cols; ++j) {
            double sc = (j + 0.5) * col_scale - 0.5;
            sc = std::clamp(sc, 0.0, static_cast<double>(in_cols - 1));
            const int c0 = static_cast<int>(std::floor(sc));
            const int c1 = std::min(c0 + 1, in_cols - 1);
            const double fc = sc - c0;
            out(i, j) = (1 - fr) * ((1 - fc) * src(r0, c0) + fc * src(r0, c1)) +
                        fr * ((1 - fc) * src(r1, c0) + fc * src(r1, c1));
        }
    }
    return out;
}

struct MnistRaw {
    Eigen::MatrixXd train_x; // flattened 28x28, digits 3 and 5 only
    std::vector<int> train_y; // 3 -> -1, 5 -> +1
    Eigen::MatrixXd test_x;
    std::vector<int> test_y;
};

/// Expects the four standard IDX files in `dir`:
/// train-images-idx3-ubyte, train-labels-idx1-ubyte, t10k-images-idx3-ubyte,
/// t10k-labels-idx1-ubyte.
inline MnistRaw load_mnist_35(const std::filesystem::path &dir) {
    auto load_split = [&](const std::string &img_name,
                          const std::string &lbl_name, Eigen::MatrixXd &x,
                          std::vector<int> &y) {
        const auto img = read_idx_images(dir / img_name);
        const auto lbl = read_idx_labels(dir / lbl_name);
        require(static_cast<int>(lbl.size()) == img.count,
                "mnist: image/label count mismatch");
        const int d = img.rows * img.cols;
        std::vector<int> keep;
        for (int i = 0; i < img.count; ++i) {
            if (lbl[i] == 3 || lbl[i] == 5) {
                keep.push_back(i);
            }
        }
        x.resize(static_cast<Eigen::Index>(keep.size()), d);
        y.clear();
        for (std::size_t r = 0; r < keep.size(); ++r) {
            const std::uint8_t *px =
                img.pixels.data() + static_cast<std::size_t>(keep[r]) * d;
            for (int j = 0; j < d; ++j) {
                x(static_cast<Eigen::Index>(r), j) = px[j] / 255.0;
            }
            y.push_back(lbl[keep[r]] == 3 ? -1 : 1);
        }
    };
    MnistRaw raw;
    load_split("train-images-idx3-ubyte", "train-labels-idx1-ubyte",
               raw.train_x, raw.train_y);
    load_split("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte", raw.test_x,
               raw.test_y);
    return raw;
}

/// Standardize with train statistics, project onto the top-d train principal
/// components; optional per-split subsample (the "minus" benchmark).
inline Dataset gen_mnist_pca(const MnistRaw &raw, int d, int subsample = 0,
                             std::uint64_t seed = 0) {
    classical::StandardScaler scaler;
    scaler.fit(raw.train_x);
    const Eigen::MatrixXd train_std = scaler.transform(raw.train_x);
    const Eigen::MatrixXd test_std = scaler.transform(raw.test_x);
    const auto projector = classical::pca_fit(train_std, d);
    Eigen::MatrixXd train_p = projector.transform(train_std);
    Eigen::MatrixXd test_p = projector.transform(test_std);
    std::vector<int> train_y = raw.train_y, test_y = raw.test_y;

    if (subsample > 0) {
        Rng rng(mix_seed(seed, 0x6d6e737473ULL));
        auto pick = [&](Eigen::MatrixXd &x, std::vector<int> &y) {
            require(static_cast<int>(y.size()) >= subsample,
                    "mnist subsample larger than split");
            auto perm = rng.permutation(static_cast<int>(y.size()));
            perm.resize(subsample);
            Eigen::MatrixXd nx(subsample, x.cols());
            std::vector<int> ny(subsample);
            for (int i = 0; i < subsample; ++i) {
                nx.row(i) = x.row(perm[i]);
                ny[i] = y[perm[i]];
            }
            x = std::move(nx);
            y = std::move(ny);
        };
        pick(train_p, train_y);
        pick(test_p, test_y);
    }

    Dataset ds;
    const Eigen::Index n_train = train_p.rows();
    const Eigen::Index n_test = test_p.rows();
    ds.inputs.resize(n_train + n_test, d);
    ds.inputs.topRows(n_train) = train_p;
    ds.inputs.bottomRows(n_test) = test_p;
    ds.labels = train_y;
    ds.labels.insert(ds.labels.end(), test_y.begin(), test_y.end());
    ds.train_idx.resize(n_train);
    ds.test_idx.resize(n_test);
    for (Eigen::Index i = 0; i < n_train; ++i) {
        ds.train_idx[i] = static_cast<int>(i);
    }
    for (Eigen::Index i = 0; i < n_test; ++i) {
        ds.test_idx[i] = static_cast<int>(n_train + i);
    }
    ds.config = {{"generator", subsample > 0 ? "mnist_pca_minus" : "mnist_pca"},
                 {"d", d},
                 {"subsample", subsample},
                 {"seed", seed}};
    ds.validate();
    return ds;
}

/// Resize 28x28 -> H x H with bilinear interpolation, flatten, standardize
/// with train statistics.
inline Dataset gen_mnist_cg(const MnistRaw &raw, int h) {
    require(h >= 2, "mnist_cg: H must be >= 2");
    auto resize_all = [&](const Eigen::MatrixXd &x) {
        Eigen::MatrixXd out(x.rows(), h * h);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            Eigen::MatrixXd img(28, 28);
            for (int r = 0; r < 28; ++r) {
                for (int c = 0; c < 28; ++c) {
                    img(r, c) = x(i, r * 28 + c);
                }
            }
            const Eigen::MatrixXd small = resize_bilinear(img, h, h);
            for (int r = 0; r < h; ++r) {
                for (int c = 0; c < h; ++c) {
                    out(i, r * h + c) = small(r, c);
                }
            }
        }
        return out;
    };
    Eigen::MatrixXd train = resize_all(raw.train_x);
    Eigen::MatrixXd test = resize_all(raw.test_x);
    classical::StandardScaler scaler;
    scaler.fit(train);
    train = scaler.transform(train);
    test = scaler.transform(test);

    Dataset ds;
    const Eigen::Index n_train = train.rows(), n_test = test.rows();
    ds.inputs.resize(n_train + n_test, h * h);
    ds.inputs.topRows(n_train) = train;
    ds.inputs.bottomRows(n_test) = test;
    ds.labels = raw.train_y;
    ds.labels.insert(ds.labels.end(), raw.test_y.begin(), raw.test_y.end());
    ds.train_idx.resize(n_train);
    ds.test_idx.resize(n_test);
    for (Eigen::Index i = 0; i < n_train; ++i) {
        ds.train_idx[i] = static_cast<int>(i);
    }
    for (Eigen::Index i = 0; i < n_test; ++i) {
        ds.test_idx[i] = static_cast<int>(n_train + i);
    }
    ds.config = {{"generator", "mnist_cg"}, {"h", h}};
    ds.validate();
    return ds;
}

} // namespace qmlbench::data
