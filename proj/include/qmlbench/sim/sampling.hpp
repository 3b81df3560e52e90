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
 * Computational-basis sampling and argmax readout.
 */
#pragma once

#include <string>
#include <vector>

#include "qmlbench/common.hpp"
#include "qmlbench/rng.hpp"
#include "qmlbench/sim/state_vector.hpp"

namespace qmlbench::sim {

/// i.i.d. samples from the |amplitude|^2 distribution, bitstrings with wire 0
/// first. Deterministic for a fixed seed.
inline std::vector<std::string> sample_bitstrings(const StateVector &state,
                                                  int shots,
                                                  std::uint64_t seed) {
    require(shots >= 1, "sample_bitstrings: shots must be >= 1, got ", shots);
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        acc += state.probability(i);
        cdf[i] = acc;
    }
    Rng rng(seed);
    std::vector<std::string> out;
    out.reserve(shots);
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] > u) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        out.push_back(state.bitstring(lo));
    }
    return out;
}

/// Basis index with the highest probability; ties go to the lowest index.
inline std::size_t most_probable_index(const StateVector &state) {
    std::size_t best = 0;
    double best_p = state.probability(0);
    for (std::size_t i = 1; i < state.size(); ++i) {
        const double p = state.probability(i);
        if (p > best_p) {
            best_p = p;
            best = i;
        }
    }
    return best;
}

inline std::string most_probable_bitstring(const StateVector &state) {
    return state.bitstring(most_probable_index(state));
}

} // namespace qmlbench::sim
