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

#include <cmath>
#include <complex>
#include <numbers>

#include "qmlbench/rng.hpp"
#include "qmlbench/sim/circuit.hpp"
#include "qmlbench/sim/density_matrix.hpp"
#include "qmlbench/sim/observable.hpp"
#include "qmlbench/sim/sampling.hpp"
#include "qmlbench/sim/state_vector.hpp"
#include "qmlbench/sim/templates.hpp"
#include "support/dense_oracle.hpp"

using namespace qmlbench;
using sim::AngleExpr;
using sim::Circuit;
using sim::cplx;
using sim::Observable;
using sim::StateVector;

namespace {

StateVector random_state(int n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (auto &a : amps) {
        a = cplx{rng.normal(), rng.normal()};
    }
    auto s = StateVector::from_amplitudes(n_qubits, std::move(amps));
    s.normalize();
    return s;
}

oracle::Vec to_eigen(const StateVector &s) {
    oracle::Vec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

/// A fixed 3-qubit, 5-gate circuit with bound angles mirrored in the oracle.
Circuit five_gate_circuit() {
    Circuit c(3, 0);
    c.h(0);
    c.rx(1, AngleExpr::literal(0.3));
    c.cnot(0, 2);
    c.rot(2, AngleExpr::literal(0.7), AngleExpr::literal(-0.2),
          AngleExpr::literal(1.1));
    c.pauli_rot({0, 1}, "ZZ", AngleExpr::literal(0.5));
    return c;
}

oracle::Mat five_gate_matrix() {
    using namespace oracle;
    Mat u = identity(8);
    u = lift_single(hadamard(), 0, 3) * u;
    u = lift_single(rx(0.3), 1, 3) * u;
    u = cnot(0, 2, 3) * u;
    u = lift_single(rot(0.7, -0.2, 1.1), 2, 3) * u;
    u = pauli_rotation("ZZ", {0, 1}, 0.5, 3) * u;
    return u;
}

} // namespace

TEST_CASE("empty circuit leaves the ground state") {
    Circuit c(2, 0);
    const auto s = sim::apply_circuit(c, {}, {});
    REQUIRE(s[0] == cplx{1.0, 0.0});
    REQUIRE(s[1] == cplx{0.0, 0.0});
    REQUIRE(s[2] == cplx{0.0, 0.0});
    REQUIRE(s[3] == cplx{0.0, 0.0});
}

TEST_CASE("single Hadamard gives the uniform one-qubit state") {
    Circuit c(1, 0);
    c.h(0);
    const auto s = sim::apply_circuit(c, {}, {});
    const double r = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(s[0] - cplx{r, 0.0}) < 1e-15);
    REQUIRE(std::abs(s[1] - cplx{r, 0.0}) < 1e-15);
}

TEST_CASE("five-gate circuit matches the dense Kronecker oracle") {
    const auto s = sim::apply_circuit(five_gate_circuit(), {}, {});
    const oracle::Vec expected = five_gate_matrix() * oracle::ground_state(3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        REQUIRE(std::abs(s[i] - expected(static_cast<Eigen::Index>(i))) <
                1e-12);
    }
}

TEST_CASE("apply_circuit rejects mismatched feature/parameter sizes") {
    Circuit c(1, 2);
    c.rx(0, AngleExpr::feature(0));
    const std::vector<double> one{0.5};
    REQUIRE_THROWS_AS(sim::apply_circuit(c, one, {}), InvalidArgument);
    Circuit p(1, 0);
    p.add_params(2);
    p.ry(0, AngleExpr::param(0));
    REQUIRE_THROWS_AS(sim::apply_circuit(p, {}, one), InvalidArgument);
}

TEST_CASE("expectation of Z in basis and superposition states") {
    StateVector zero(1);
    REQUIRE(sim::expectation(zero, Observable::z_on(0, 1)) ==
            Catch::Approx(1.0));
    Circuit c(1, 0);
    c.h(0);
    const auto plus = sim::apply_circuit(c, {}, {});
    REQUIRE(std::abs(sim::expectation(plus, Observable::z_on(0, 1))) < 1e-12);
}

TEST_CASE("expectation of a Pauli sum matches the dense observable oracle") {
    const auto psi = random_state(3, 42);
    const Observable obs({{0.5, "ZIZ"}, {0.2, "XXI"}});
    const double got = sim::expectation(psi, obs);

    const oracle::Mat m = 0.5 * oracle::lift_word("ZIZ", {0, 1, 2}, 3) +
                          0.2 * oracle::lift_word("XXI", {0, 1, 2}, 3);
    const oracle::Vec v = to_eigen(psi);
    const double expected = (v.adjoint() * m * v)(0, 0).real();
    REQUIRE(got == Catch::Approx(expected).margin(1e-12));
    REQUIRE(std::abs(got) <= obs.coeff_norm() + 1e-12);
}

TEST_CASE("expectation rejects mismatched register sizes") {
    StateVector s(2);
    REQUIRE_THROWS_AS(sim::expectation(s, Observable::z_on(0, 3)),
                      InvalidArgument);
}

TEST_CASE("state overlap of identical, orthogonal and random states") {
    const auto a = random_state(2, 7);
    REQUIRE(sim::state_overlap(a, a) == Catch::Approx(1.0).margin(1e-12));

    StateVector zero(1);
    auto one = StateVector(1);
    one.apply_x(0);
    REQUIRE(sim::state_overlap(zero, one) == Catch::Approx(0.0).margin(1e-15));

    const auto b = random_state(2, 8);
    cplx ip{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        ip += std::conj(a[i]) * b[i];
    }
    REQUIRE(sim::state_overlap(a, b) ==
            Catch::Approx(std::norm(ip)).margin(1e-12));
    // symmetry is exact
    REQUIRE(sim::state_overlap(a, b) == sim::state_overlap(b, a));
}

TEST_CASE("amplitude embedding pads with 1/2^n and normalizes") {
    SECTION("exact fit") {
        const auto s = sim::amplitude_embed({1, 0, 0, 0}, 2);
        REQUIRE(std::abs(s[0] - cplx{1, 0}) < 1e-15);
    }
    SECTION("padding") {
        const auto s = sim::amplitude_embed({3, 4}, 2);
        const double norm = std::sqrt(9.0 + 16.0 + 2 * 0.25 * 0.25);
        REQUIRE(s[0].real() == Catch::Approx(3.0 / norm));
        REQUIRE(s[1].real() == Catch::Approx(4.0 / norm));
        REQUIRE(s[2].real() == Catch::Approx(0.25 / norm));
        REQUIRE(s[3].real() == Catch::Approx(0.25 / norm));
    }
    SECTION("empty input is rejected") {
        REQUIRE_THROWS_AS(sim::amplitude_embed({}, 2), InvalidArgument);
    }
    SECTION("too many values are rejected") {
        REQUIRE_THROWS_AS(sim::amplitude_embed({1, 2, 3, 4, 5}, 2),
                          InvalidArgument);
    }
}

TEST_CASE("IQP embedding degenerates to H + RZ on one qubit") {
    const auto c = sim::build_template(sim::TemplateKind::IqpEmbedding, 1, 1);
    REQUIRE(c.ops().size() == 2);
    REQUIRE(c.ops()[0].kind == sim::GateKind::H);
    REQUIRE(c.ops()[1].kind == sim::GateKind::RZ);
    REQUIRE(c.ops()[1].angles[0].terms[0].feature == 0);
}

TEST_CASE("strongly entangling layers have 3 * n * L parameters") {
    const auto c =
        sim::build_template(sim::TemplateKind::StronglyEntangling, 4, 3);
    REQUIRE(c.n_params() == 36);
}

TEST_CASE("QAOA embedding uses one more qubit than features") {
    const auto c = sim::build_template(sim::TemplateKind::QaoaEmbedding, 5, 2);
    REQUIRE(c.n_features() == 4);
    REQUIRE(c.n_qubits() == 5);
}

TEST_CASE("unknown template kind is rejected") {
    REQUIRE_THROWS_AS(sim::template_kind_from_string("nope"), InvalidArgument);
}

TEST_CASE("random layers are deterministic under a fixed seed") {
    const auto a =
        sim::build_template(sim::TemplateKind::RandomLayers, 3, 2, 99);
    const auto b =
        sim::build_template(sim::TemplateKind::RandomLayers, 3, 2, 99);
    REQUIRE(a.ops().size() == b.ops().size());
    for (std::size_t i = 0; i < a.ops().size(); ++i) {
        REQUIRE(a.ops()[i].kind == b.ops()[i].kind);
        REQUIRE(a.ops()[i].wires == b.ops()[i].wires);
        if (!a.ops()[i].angles.empty()) {
            REQUIRE(a.ops()[i].angles[0].terms[0].coeff ==
                    b.ops()[i].angles[0].terms[0].coeff);
        }
    }
}

TEST_CASE("sampling a computational basis state is deterministic") {
    StateVector s(2); // |00>
    const auto samples = sim::sample_bitstrings(s, 5, 123);
    REQUIRE(samples.size() == 5);
    for (const auto &b : samples) {
        REQUIRE(b == "00");
    }
}

TEST_CASE("sampling frequencies concentrate for the uniform qubit") {
    Circuit c(1, 0);
    c.h(0);
    const auto plus = sim::apply_circuit(c, {}, {});
    const auto samples = sim::sample_bitstrings(plus, 100000, 2024);
    int ones = 0;
    for (const auto &b : samples) {
        ones += b == "1" ? 1 : 0;
    }
    const double freq = static_cast<double>(ones) / samples.size();
    REQUIRE(freq == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("sampling is reproducible across runs with one seed") {
    const auto s = random_state(3, 5);
    REQUIRE(sim::sample_bitstrings(s, 64, 77) ==
            sim::sample_bitstrings(s, 64, 77));
}

TEST_CASE("most probable bitstring and tie-breaking") {
    StateVector s(2);
    s.apply_x(0); // |10>
    REQUIRE(sim::most_probable_bitstring(s) == "10");

    Circuit c(1, 0);
    c.h(0);
    const auto plus = sim::apply_circuit(c, {}, {});
    REQUIRE(sim::most_probable_bitstring(plus) == "0"); // tie -> lowest value

    const auto r = random_state(3, 11);
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r.probability(i) > r.probability(best)) {
            best = i;
        }
    }
    REQUIRE(sim::most_probable_bitstring(r) == r.bitstring(best));
}

TEST_CASE("Gibbs state of the zero Hamiltonian is maximally mixed") {
    const Observable h({{0.0, "II"}});
    const auto rho = sim::gibbs_state(h, 1.0);
    REQUIRE(rho.trace_real() == Catch::Approx(1.0).margin(1e-10));
    for (int i = 0; i < 4; ++i) {
        REQUIRE(rho.matrix()(i, i).real() == Catch::Approx(0.25).margin(1e-12));
    }
}

TEST_CASE("Gibbs state of Z matches the closed form") {
    const Observable h({{1.0, "Z"}});
    SECTION("high temperature flattens the distribution") {
        const auto rho = sim::gibbs_state(h, 100.0);
        REQUIRE(rho.matrix()(0, 0).real() == Catch::Approx(0.5).margin(0.01));
        REQUIRE(rho.matrix()(1, 1).real() == Catch::Approx(0.5).margin(0.01));
    }
    SECTION("unit temperature") {
        const auto rho = sim::gibbs_state(h, 1.0);
        const double z = std::exp(-1.0) + std::exp(1.0);
        REQUIRE(rho.matrix()(0, 0).real() ==
                Catch::Approx(std::exp(-1.0) / z).margin(1e-12));
        REQUIRE(rho.matrix()(1, 1).real() ==
                Catch::Approx(std::exp(1.0) / z).margin(1e-12));
    }
    SECTION("non-positive temperature is rejected") {
        REQUIRE_THROWS_AS(sim::gibbs_state(h, 0.0), InvalidArgument);
        REQUIRE_THROWS_AS(sim::gibbs_state(h, -1.0), InvalidArgument);
    }
}

TEST_CASE("Gibbs state commutes with its Hamiltonian") {
    Rng rng(31);
    std::vector<sim::PauliTerm> terms;
    const std::string alphabet = "IXYZ";
    for (int t = 0; t < 4; ++t) {
        std::string w(3, 'I');
        for (auto &ch : w) {
            ch = alphabet[rng.uniform_index(4)];
        }
        terms.push_back({rng.uniform(-1.0, 1.0), w});
    }
    const Observable h(terms);
    const auto rho = sim::gibbs_state(h, 2.0);
    const Eigen::MatrixXcd hm = sim::DensityMatrix::observable_matrix(h);
    const Eigen::MatrixXcd comm = rho.matrix() * hm - hm * rho.matrix();
    REQUIRE(comm.cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE(rho.hermiticity_error() < 1e-10);
    REQUIRE(rho.trace_real() == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(rho.min_eigenvalue() > -1e-10);
}

TEST_CASE("reduced density matrix of product and entangled states") {
    SECTION("product state |0> (x) |+>") {
        Circuit c(2, 0);
        c.h(1);
        const auto s = sim::apply_circuit(c, {}, {});
        const auto rho = sim::reduced_density_matrix(s, 1);
        REQUIRE(rho.matrix()(0, 0).real() == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(rho.matrix()(0, 1).real() == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(rho.matrix()(1, 0).real() == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(rho.matrix()(1, 1).real() == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("Bell state reduces to the maximally mixed qubit") {
        Circuit c(2, 0);
        c.h(0);
        c.cnot(0, 1);
        const auto s = sim::apply_circuit(c, {}, {});
        const auto rho = sim::reduced_density_matrix(s, 0);
        REQUIRE(rho.matrix()(0, 0).real() == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(rho.matrix()(1, 1).real() == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(std::abs(rho.matrix()(0, 1)) < 1e-12);
    }
    SECTION("random state matches the index-summation oracle") {
        const auto s = random_state(3, 17);
        const auto rho = sim::reduced_density_matrix(s, 2);
        const oracle::Mat expected = oracle::reduced_one_qubit(to_eigen(s), 2, 3);
        REQUIRE((rho.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("wire out of range") {
        StateVector s(2);
        REQUIRE_THROWS_AS(sim::reduced_density_matrix(s, 2), InvalidArgument);
    }
}

TEST_CASE("every gate kind preserves the norm on random states") {
    constexpr double pi = std::numbers::pi;
    auto check = [&](auto &&apply_fn) {
        for (int trial = 0; trial < 100; ++trial) {
            auto s = random_state(3, 1000 + trial);
            apply_fn(s, trial);
            REQUIRE(std::abs(s.norm_sq() - 1.0) < 1e-10);
        }
    };
    check([&](StateVector &s, int t) {
        s.apply_single(sim::detail::rx_matrix(0.1 * t), t % 3);
    });
    check([&](StateVector &s, int t) {
        s.apply_single(sim::detail::ry_matrix(0.2 * t - 1), t % 3);
    });
    check([&](StateVector &s, int t) {
        s.apply_single(sim::detail::rz_matrix(0.05 * t), t % 3);
    });
    check([&](StateVector &s, int t) {
        s.apply_single(sim::detail::rot_matrix(0.1 * t, -0.3, pi / 3), t % 3);
    });
    check([&](StateVector &s, int t) { s.apply_h(t % 3); });
    check([&](StateVector &s, int t) { s.apply_x(t % 3); });
    check([&](StateVector &s, int t) { s.apply_cnot(t % 3, (t + 1) % 3); });
    check([&](StateVector &s, int t) { s.apply_cz(t % 3, (t + 1) % 3); });
    check([&](StateVector &s, int t) {
        s.apply_pauli_rotation("XY", {t % 3, (t + 1) % 3}, 0.3 * t);
    });
}

TEST_CASE("circuits expand to unitary dense matrices") {
    Rng rng(2025);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(2));
        Circuit c(n, 0);
        for (int g = 0; g < 8; ++g) {
            const int wire = static_cast<int>(rng.uniform_index(n));
            const int other = (wire + 1) % n;
            switch (rng.uniform_index(5)) {
            case 0:
                c.rx(wire, AngleExpr::literal(rng.uniform(-3, 3)));
                break;
            case 1:
                c.h(wire);
                break;
            case 2:
                c.cnot(wire, other);
                break;
            case 3:
                c.crot(wire, other, AngleExpr::literal(rng.uniform(-3, 3)),
                       AngleExpr::literal(rng.uniform(-3, 3)),
                       AngleExpr::literal(rng.uniform(-3, 3)));
                break;
            default:
                c.pauli_rot({wire, other}, "XZ",
                            AngleExpr::literal(rng.uniform(-3, 3)));
                break;
            }
        }
        const int dim = 1 << n;
        Eigen::MatrixXcd u(dim, dim);
        for (int col = 0; col < dim; ++col) {
            std::vector<cplx> amps(dim, cplx{0, 0});
            amps[col] = 1.0;
            auto s = StateVector::from_amplitudes(n, std::move(amps));
            sim::apply_circuit_to(s, c, {}, {});
            for (int row = 0; row < dim; ++row) {
                u(row, col) = s[row];
            }
        }
        const Eigen::MatrixXcd gram = u.adjoint() * u;
        REQUIRE((gram - Eigen::MatrixXcd::Identity(dim, dim))
                    .cwiseAbs()
                    .maxCoeff() < 1e-10);
    }
}

TEST_CASE("CRot matches the dense controlled-rotation oracle") {
    Circuit c(2, 0);
    c.h(0);
    c.crot(0, 1, AngleExpr::literal(0.4), AngleExpr::literal(-0.9),
           AngleExpr::literal(1.3));
    const auto s = sim::apply_circuit(c, {}, {});
    const oracle::Mat u = oracle::controlled(oracle::rot(0.4, -0.9, 1.3), 0, 1, 2) *
                          oracle::lift_single(oracle::hadamard(), 0, 2);
    const oracle::Vec expected = u * oracle::ground_state(2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        REQUIRE(std::abs(s[i] - expected(static_cast<Eigen::Index>(i))) <
                1e-12);
    }
}

TEST_CASE("single-qubit circuits factorize over product observables") {
    // Circuits made only of single-qubit gates must give product expectations.
    Rng rng(404);
    const int n = 3;
    Circuit c(n, 0);
    std::vector<std::vector<std::pair<char, double>>> per_qubit(n);
    for (int g = 0; g < 9; ++g) {
        const int wire = g % n;
        const char kinds[3] = {'x', 'y', 'z'};
        const char k = kinds[rng.uniform_index(3)];
        const double a = rng.uniform(-2, 2);
        if (k == 'x') c.rx(wire, AngleExpr::literal(a));
        if (k == 'y') c.ry(wire, AngleExpr::literal(a));
        if (k == 'z') c.rz(wire, AngleExpr::literal(a));
        per_qubit[wire].push_back({k, a});
    }
    const auto full = sim::apply_circuit(c, {}, {});
    const Observable obs({{1.0, "ZXZ"}});
    const double joint = sim::expectation(full, obs);

    double product = 1.0;
    const std::string word = "ZXZ";
    for (int q = 0; q < n; ++q) {
        Circuit single(1, 0);
        for (const auto &[k, a] : per_qubit[q]) {
            if (k == 'x') single.rx(0, AngleExpr::literal(a));
            if (k == 'y') single.ry(0, AngleExpr::literal(a));
            if (k == 'z') single.rz(0, AngleExpr::literal(a));
        }
        const auto s = sim::apply_circuit(single, {}, {});
        product *= sim::expectation(s, Observable::pauli_on(word[q], 0, 1));
    }
    REQUIRE(joint == Catch::Approx(product).margin(1e-12));
}
