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
 * Dataset container with train/test split, CSV emission (17 significant
 * digits so files are byte-identical across runs) and a JSON config sidecar
 * recording the generator, parameters and seed.
 */
#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench::data {

using json = nlohmann::json;

struct Dataset {
    Eigen::MatrixXd inputs;   // N x d
    std::vector<int> labels;  // +-1
    std::vector<int> train_idx;
    std::vector<int> test_idx;
    json config;

    int n_samples() const { return static_cast<int>(inputs.rows()); }
    int n_features() const { return static_cast<int>(inputs.cols()); }

    Eigen::MatrixXd train_x() const { return select_rows(train_idx); }
    Eigen::MatrixXd test_x() const { return select_rows(test_idx); }
    std::vector<int> train_y() const { return select_labels(train_idx); }
    std::vector<int> test_y() const { return select_labels(test_idx); }

    Eigen::MatrixXd select_rows(const std::vector<int> &idx) const {
        Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()),
                            inputs.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            out.row(static_cast<Eigen::Index>(i)) = inputs.row(idx[i]);
        }
        return out;
    }

    std::vector<int> select_labels(const std::vector<int> &idx) const {
        std::vector<int> out;
        out.reserve(idx.size());
        for (int i : idx) {
            out.push_back(labels[i]);
        }
        return out;
    }

    void validate() const {
        require(static_cast<Eigen::Index>(labels.size()) == inputs.rows(),
                "dataset: ", labels.size(), " labels for ", inputs.rows(),
                " rows");
        for (int y : labels) {
            require(y == 1 || y == -1, "dataset: label must be +-1, got ", y);
        }
        require(inputs.allFinite(), "dataset: non-finite feature values");
    }
};

/// Shuffles indices with the seed and splits so that test/train equals
/// `test_ratio` up to rounding.
inline void assign_split(Dataset &ds, double test_ratio, std::uint64_t seed) {
    const int n = ds.n_samples();
    const int n_test =
        static_cast<int>(std::lround(n * test_ratio / (1.0 + test_ratio)));
    Rng rng(mix_seed(seed, 0x73706c6974ULL));
    const auto perm = rng.permutation(n);
    ds.train_idx.assign(perm.begin(), perm.end() - n_test);
    ds.test_idx.assign(perm.end() - n_test, perm.end());
}

/// One CSV row per sample: x0,...,x{d-1},y with %.17g formatting.
inline std::string to_csv(const Eigen::MatrixXd &x,
                          const std::vector<int> &y) {
    std::string out;
    const int d = static_cast<int>(x.cols());
    for (int j = 0; j < d; ++j) {
        out += "x" + std::to_string(j) + ",";
    }
    out += "y\n";
    char buf[64];
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", x(i, j));
            out += buf;
            out += ',';
        }
        out += std::to_string(y[i]);
        out += '\n';
    }
    return out;
}

struct CsvData {
    Eigen::MatrixXd x;
    std::vector<int> y;
};

inline CsvData from_csv(const std::string &text) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::size_t pos = text.find('\n');
    require(pos != std::string::npos, "csv: missing header row");
    ++pos;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) {
            continue;
        }
        std::vector<double> vals;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string cell =
                line.substr(start, comma == std::string::npos
                                       ? std::string::npos
                                       : comma - start);
            vals.push_back(std::stod(cell));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        require(vals.size() >= 2, "csv: row with fewer than two columns");
        labels.push_back(static_cast<int>(vals.back()));
        vals.pop_back();
        rows.push_back(std::move(vals));
    }
    CsvData out;
    out.x.resize(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            out.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
        }
    }
    out.y = std::move(labels);
    return out;
}

inline void write_file(const std::filesystem::path &path,
                       const std::string &content) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), "cannot open ", path.string(), " for writing");
    f << content;
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), "cannot open ", path.string());
    return std::string(std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>());
}

/// Writes <stem>_train.csv, <stem>_test.csv and <stem>_config.json.
inline void save_dataset(const Dataset &ds, const std::filesystem::path &dir,
                         const std::string &stem) {
    std::filesystem::create_directories(dir);
    write_file(dir / (stem + "_train.csv"),
               to_csv(ds.train_x(), ds.train_y()));
    write_file(dir / (stem + "_test.csv"), to_csv(ds.test_x(), ds.test_y()));
    write_file(dir / (stem + "_config.json"), ds.config.dump(2) + "\n");
}

inline CsvData load_csv_file(const std::filesystem::path &path) {
    return from_csv(read_file(path));
}

} // namespace qmlbench::data
