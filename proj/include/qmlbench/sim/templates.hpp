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
 * Reusable circuit building blocks. Exact gate orderings are documented in
 * docs/model_catalog.md; every builder is deterministic given its arguments
 * (and seed, for random_layers).
 *
 * Builders append to an existing circuit so that models can compose an
 * embedding with a variational block. `no_entanglement` drops every
 * multi-qubit gate, leaving the single-qubit structure untouched.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "qmlbench/common.hpp"
#include "qmlbench/rng.hpp"
#include "qmlbench/sim/circuit.hpp"

namespace qmlbench::sim {

/// IQP-inspired embedding: per repeat, Hadamards on all wires, RZ(x_i) per
/// wire, then ZZ rotations with angle x_i * x_j on every pair i < j.
/// Requires n_features == n_qubits.
inline void append_iqp_embedding(Circuit &c, int repeats,
                                 bool no_entanglement = false) {
    require(repeats >= 1, "iqp_embedding: repeats must be >= 1");
    require(c.n_features() == c.n_qubits(),
            "iqp_embedding: needs one feature per qubit (", c.n_features(),
            " features, ", c.n_qubits(), " qubits)");
    const int n = c.n_qubits();
    for (int r = 0; r < repeats; ++r) {
        for (int q = 0; q < n; ++q) {
            c.h(q);
        }
        for (int q = 0; q < n; ++q) {
            c.rz(q, AngleExpr::feature(q));
        }
        if (!no_entanglement) {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    c.pauli_rot({i, j}, "ZZ", AngleExpr::feature_product(i, j));
                }
            }
        }
    }
}

/// QAOA-inspired embedding on n_features + 1 qubits: per layer RX feature
/// encoding (the extra wire gets a constant pi/4 "latent" angle), a trainable
/// ZZ ring and trainable RY fields; one more encoding layer closes the block.
/// Per-layer parameter count is 2n for n >= 3 wires and 3 for n == 2.
inline int append_qaoa_embedding(Circuit &c, int n_layers,
                                 bool no_entanglement = false) {
    require(n_layers >= 1, "qaoa_embedding: n_layers must be >= 1");
    const int n = c.n_qubits();
    const int d = c.n_features();
    require(n == d + 1, "qaoa_embedding: needs one more qubit than features (",
            n, " qubits for ", d, " features)");
    constexpr double latent_angle = std::numbers::pi / 4.0;
    auto encode = [&] {
        for (int q = 0; q < d; ++q) {
            c.rx(q, AngleExpr::feature(q));
        }
        c.rx(d, AngleExpr::literal(latent_angle));
    };
    const int per_layer = (n == 2) ? 3 : 2 * n;
    const int base = c.add_params(per_layer * n_layers);
    for (int l = 0; l < n_layers; ++l) {
        encode();
        int p = base + l * per_layer;
        if (!no_entanglement) {
            if (n == 2) {
                c.pauli_rot({0, 1}, "ZZ", AngleExpr::param(p));
            } else {
                for (int q = 0; q < n; ++q) {
                    c.pauli_rot({q, (q + 1) % n}, "ZZ",
                                AngleExpr::param(p + q));
                }
            }
        }
        p += (n == 2) ? 1 : n;
        for (int q = 0; q < n; ++q) {
            c.ry(q, AngleExpr::param(p + q));
        }
    }
    encode();
    return base;
}

/// Per layer, a full trainable Rot on every wire followed by a CNOT ring whose
/// control-target distance cycles through 1, 2, ... with the layer index.
/// Adds 3 * n_qubits * n_layers parameters.
inline int append_strongly_entangling(Circuit &c, int n_layers,
                                      bool no_entanglement = false) {
    require(n_layers >= 1, "strongly_entangling: n_layers must be >= 1");
    const int n = c.n_qubits();
    const int base = c.add_params(3 * n * n_layers);
    for (int l = 0; l < n_layers; ++l) {
        for (int q = 0; q < n; ++q) {
            const int p = base + 3 * (l * n + q);
            c.rot(q, AngleExpr::param(p), AngleExpr::param(p + 1),
                  AngleExpr::param(p + 2));
        }
        if (n >= 2 && !no_entanglement) {
            const int range = (l % (n - 1)) + 1;
            for (int q = 0; q < n; ++q) {
                c.cnot(q, (q + range) % n);
            }
        }
    }
    return base;
}

/// Fixed menu of {RX, RY, RZ on a random wire, CNOT on a random pair}; draws
/// n_layers * n_qubits gates with literal angles uniform on [0, 2pi).
inline void append_random_layers(Circuit &c, int n_layers, std::uint64_t seed,
                                 bool no_entanglement = false) {
    require(n_layers >= 1, "random_layers: n_layers must be >= 1");
    const int n = c.n_qubits();
    Rng rng(seed);
    const int draws = n_layers * n;
    for (int i = 0; i < draws; ++i) {
        const auto choice = rng.uniform_index(4);
        const int wire = static_cast<int>(rng.uniform_index(n));
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        switch (choice) {
        case 0:
            c.rx(wire, AngleExpr::literal(angle));
            break;
        case 1:
            c.ry(wire, AngleExpr::literal(angle));
            break;
        case 2:
            c.rz(wire, AngleExpr::literal(angle));
            break;
        default: {
            if (n < 2) {
                c.rz(wire, AngleExpr::literal(angle));
                break;
            }
            int other = static_cast<int>(rng.uniform_index(n - 1));
            if (other >= wire) {
                ++other;
            }
            if (!no_entanglement) {
                c.cnot(wire, other);
            }
            break;
        }
        }
    }
}

/// CNOT ring (q -> q+1 mod n); a 2-wire ring degenerates to a single CNOT.
inline void append_cnot_ring(Circuit &c) {
    const int n = c.n_qubits();
    if (n < 2) {
        return;
    }
    if (n == 2) {
        c.cnot(0, 1);
        return;
    }
    for (int q = 0; q < n; ++q) {
        c.cnot(q, (q + 1) % n);
    }
}

/// CZ ladder on adjacent pairs (q, q+1), q = 0..n-2.
inline void append_cz_ladder(Circuit &c) {
    for (int q = 0; q + 1 < c.n_qubits(); ++q) {
        c.cz(q, q + 1);
    }
}

enum class TemplateKind {
    IqpEmbedding,
    QaoaEmbedding,
    StronglyEntangling,
    RandomLayers,
    CnotRing,
    CzLadder,
};

inline TemplateKind template_kind_from_string(const std::string &s) {
    if (s == "iqp_embedding") return TemplateKind::IqpEmbedding;
    if (s == "qaoa_embedding") return TemplateKind::QaoaEmbedding;
    if (s == "strongly_entangling") return TemplateKind::StronglyEntangling;
    if (s == "random_layers") return TemplateKind::RandomLayers;
    if (s == "cnot_ring") return TemplateKind::CnotRing;
    if (s == "cz_ladder") return TemplateKind::CzLadder;
    throw InvalidArgument(format_msg("unknown template kind '", s, "'"));
}

/// Builds a standalone template circuit. Embedding templates bind features
/// (IQP: d = n_qubits; QAOA: d = n_qubits - 1), variational ones add
/// trainable parameters, random_layers freezes literal angles from the seed.
inline Circuit build_template(TemplateKind kind, int n_qubits, int n_layers,
                              std::uint64_t seed = 0) {
    switch (kind) {
    case TemplateKind::IqpEmbedding: {
        Circuit c(n_qubits, n_qubits);
        append_iqp_embedding(c, n_layers);
        return c;
    }
    case TemplateKind::QaoaEmbedding: {
        Circuit c(n_qubits, n_qubits - 1);
        append_qaoa_embedding(c, n_layers);
        return c;
    }
    case TemplateKind::StronglyEntangling: {
        Circuit c(n_qubits, 0);
        append_strongly_entangling(c, n_layers);
        return c;
    }
    case TemplateKind::RandomLayers: {
        Circuit c(n_qubits, 0);
        append_random_layers(c, n_layers, seed);
        return c;
    }
    case TemplateKind::CnotRing: {
        Circuit c(n_qubits, 0);
        append_cnot_ring(c);
        return c;
    }
    case TemplateKind::CzLadder: {
        Circuit c(n_qubits, 0);
        append_cz_ladder(c);
        return c;
    }
    }
    throw InvalidArgument("unknown template kind");
}

} // namespace qmlbench::sim
