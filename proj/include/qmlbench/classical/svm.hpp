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
 * Soft-margin SVM trained by sequential minimal optimization with
 * maximal-violating-pair working-set selection. Kernels are either a
 * precomputed Gram matrix or RBF exp(-gamma ||x - x'||^2).
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "qmlbench/common.hpp"

namespace qmlbench::classical {

struct SmoResult {
    Eigen::VectorXd alpha;
    double bias = 0.0;
    long iterations = 0;
    double kkt_violation = 0.0;
    double duality_gap = 0.0;
    bool converged = false;
};

/// Requires symmetric K with eigenvalues >= -1e-8 and labels in {-1, +1}
/// covering both classes.
inline void check_kernel_matrix(const Eigen::MatrixXd &k,
                                double tolerance = 1e-8) {
    require(k.rows() == k.cols(), "kernel matrix must be square, got ",
            k.rows(), "x", k.cols());
    const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
    require(asym < 1e-8, "kernel matrix is not symmetric (max deviation ",
            asym, ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k,
                                                      Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    require(min_ev >= -tolerance, "kernel matrix is not PSD (min eigenvalue ",
            min_ev, ")");
}

inline SmoResult smo_solve(const Eigen::MatrixXd &k,
                           const std::vector<int> &y, double C,
                           double tol = 1e-3, long max_iter = 10000) {
    const Eigen::Index n = k.rows();
    require(static_cast<Eigen::Index>(y.size()) == n,
            "smo_solve: ", y.size(), " labels for ", n, " kernel rows");
    int pos = 0, neg = 0;
    for (int label : y) {
        require(label == 1 || label == -1, "labels must be +-1, got ", label);
        (label == 1 ? pos : neg)++;
    }
    require(pos > 0 && neg > 0,
            "svm_fit: training data contains a single class");

    SmoResult res;
    res.alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0); // G = Q a - e

    auto in_up = [&](Eigen::Index i) {
        return (y[i] == 1 && res.alpha(i) < C) ||
               (y[i] == -1 && res.alpha(i) > 0);
    };
    auto in_low = [&](Eigen::Index i) {
        return (y[i] == -1 && res.alpha(i) < C) ||
               (y[i] == 1 && res.alpha(i) > 0);
    };

    for (long it = 0; it < max_iter; ++it) {
        // maximal violating pair
        Eigen::Index i_up = -1, i_low = -1;
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = -y[i] * grad(i);
            if (in_up(i) && v > m_up) {
                m_up = v;
                i_up = i;
            }
            if (in_low(i) && v < m_low) {
                m_low = v;
                i_low = i;
            }
        }
        res.kkt_violation = m_up - m_low;
        if (i_up < 0 || i_low < 0 || res.kkt_violation < tol) {
            res.converged = true;
            break;
        }
        res.iterations = it + 1;

        const Eigen::Index i = i_up, j = i_low;
        const double eta = k(i, i) + k(j, j) - 2.0 * k(i, j);
        // feasible step range along alpha_i += y_i t, alpha_j -= y_j t
        double t_lo, t_hi;
        if (y[i] == 1) {
            t_lo = -res.alpha(i);
            t_hi = C - res.alpha(i);
        } else {
            t_lo = res.alpha(i) - C;
            t_hi = res.alpha(i);
        }
        if (y[j] == 1) {
            t_lo = std::max(t_lo, res.alpha(j) - C);
            t_hi = std::min(t_hi, res.alpha(j));
        } else {
            t_lo = std::max(t_lo, -res.alpha(j));
            t_hi = std::min(t_hi, C - res.alpha(j));
        }
        const double slope = y[i] * grad(i) - y[j] * grad(j); // df/dt at t=0
        double t;
        if (eta > 1e-12) {
            t = std::clamp(-slope / eta, t_lo, t_hi);
        } else {
            t = slope > 0 ? t_lo : t_hi;
        }
        if (t == 0.0) {
            res.converged = true;
            break;
        }
        const double d_ai = y[i] * t;
        const double d_aj = -y[j] * t;
        res.alpha(i) += d_ai;
        res.alpha(j) += d_aj;
        for (Eigen::Index kk = 0; kk < n; ++kk) {
            grad(kk) += y[kk] * (k(kk, i) * y[i] * d_ai + k(kk, j) * y[j] * d_aj);
        }
    }

    // bias from free support vectors, else the midpoint of the KKT bounds
    double b_sum = 0.0;
    int b_count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (res.alpha(i) > 1e-12 && res.alpha(i) < C - 1e-12) {
            b_sum += -y[i] * grad(i);
            ++b_count;
        }
    }
    if (b_count > 0) {
        res.bias = b_sum / b_count;
    } else {
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = -y[i] * grad(i);
            if (in_up(i)) {
                m_up = std::max(m_up, v);
            }
            if (in_low(i)) {
                m_low = std::min(m_low, v);
            }
        }
        res.bias = (m_up + m_low) / 2.0;
    }

    // duality gap: primal (hinge) minus dual objective
    Eigen::VectorXd f(n);
    double quad = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double fi = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            fi += res.alpha(j) * y[j] * k(i, j);
        }
        f(i) = fi;
        quad += res.alpha(i) * y[i] * fi;
    }
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        hinge += std::max(0.0, 1.0 - y[i] * (f(i) + res.bias));
    }
    const double primal = 0.5 * quad + C * hinge;
    const double dual = res.alpha.sum() - 0.5 * quad;
    res.duality_gap = primal - dual;
    return res;
}

/// Trained model; covers both the precomputed-kernel and the RBF form.
class SVMModel {
  public:
    /// Precomputed path: keeps dual coefficients against training indices.
    static SVMModel from_precomputed(const Eigen::MatrixXd &gram,
                                     const std::vector<int> &y, double C,
                                     double psd_tolerance = 1e-8) {
        check_kernel_matrix(gram, psd_tolerance);
        SVMModel m;
        m.C_ = C;
        const SmoResult sol = smo_solve(gram, y, C);
        m.store_duals(sol, y);
        return m;
    }

    /// RBF path: keeps the support vectors themselves.
    static SVMModel from_rbf(const Eigen::MatrixXd &x,
                             const std::vector<int> &y, double gamma,
                             double C) {
        require(gamma > 0.0, "svm_fit: gamma must be positive, got ", gamma);
        const Eigen::Index n = x.rows();
        Eigen::MatrixXd k(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                const double d2 = (x.row(i) - x.row(j)).squaredNorm();
                k(i, j) = k(j, i) = std::exp(-gamma * d2);
            }
        }
        SVMModel m;
        m.C_ = C;
        m.gamma_ = gamma;
        const SmoResult sol = smo_solve(k, y, C);
        m.store_duals(sol, y);
        // keep only rows with nonzero duals
        std::vector<Eigen::Index> sv;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (sol.alpha(i) > 1e-12) {
                sv.push_back(i);
            }
        }
        m.support_x_.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
        Eigen::VectorXd packed(static_cast<Eigen::Index>(sv.size()));
        for (std::size_t s = 0; s < sv.size(); ++s) {
            m.support_x_.row(static_cast<Eigen::Index>(s)) = x.row(sv[s]);
            packed(static_cast<Eigen::Index>(s)) = m.dual_coef_(sv[s]);
        }
        m.dual_coef_ = packed;
        return m;
    }

    /// Decision value from kernel evaluations against the stored duals; for
    /// the precomputed path `k_row[i]` = k(training_i, x).
    double decision_from_kernel(const Eigen::VectorXd &k_row) const {
        require(k_row.size() == dual_coef_.size(),
                "decision_from_kernel: expected ", dual_coef_.size(),
                " kernel values, got ", k_row.size());
        return dual_coef_.dot(k_row) + bias_;
    }

    double decision_rbf(const Eigen::VectorXd &x) const {
        require(gamma_ > 0.0, "decision_rbf: model was not trained with RBF");
        double f = bias_;
        for (Eigen::Index i = 0; i < support_x_.rows(); ++i) {
            const double d2 = (support_x_.row(i) - x.transpose()).squaredNorm();
            f += dual_coef_(i) * std::exp(-gamma_ * d2);
        }
        return f;
    }

    static int sign_class(double f) { return f >= 0.0 ? 1 : -1; }

    int predict_rbf(const Eigen::VectorXd &x) const {
        return sign_class(decision_rbf(x));
    }

    const Eigen::VectorXd &dual_coef() const { return dual_coef_; } // a_i y_i
    double bias() const { return bias_; }
    double gamma() const { return gamma_; }
    double regularization() const { return C_; }
    double duality_gap() const { return duality_gap_; }
    double kkt_violation() const { return kkt_violation_; }
    const Eigen::MatrixXd &support_vectors() const { return support_x_; }

    void restore(Eigen::VectorXd dual_coef, double bias, double gamma,
                 Eigen::MatrixXd support_x) {
        dual_coef_ = std::move(dual_coef);
        bias_ = bias;
        gamma_ = gamma;
        support_x_ = std::move(support_x);
    }

  private:
    void store_duals(const SmoResult &sol, const std::vector<int> &y) {
        dual_coef_.resize(sol.alpha.size());
        for (Eigen::Index i = 0; i < sol.alpha.size(); ++i) {
            dual_coef_(i) = sol.alpha(i) * y[i];
        }
        bias_ = sol.bias;
        duality_gap_ = sol.duality_gap;
        kkt_violation_ = sol.kkt_violation;
    }

    Eigen::VectorXd dual_coef_;
    Eigen::MatrixXd support_x_;
    double bias_ = 0.0;
    double gamma_ = 0.0;
    double C_ = 1.0;
    double duality_gap_ = 0.0;
    double kkt_violation_ = 0.0;
};

} // namespace qmlbench::classical
