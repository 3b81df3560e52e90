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
 * Model kinds, hyperparameter assignments and variant flags. The per-kind
 * hyperparameter grids live in factory.hpp; docs/model_catalog.md documents
 * every circuit and loss.
 */
#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <variant>

#include "qmlbench/common.hpp"

namespace qmlbench::models {

using json = nlohmann::json;

enum class ModelKind {
    CircuitCentric,
    DataReuploading,
    DressedQuantumCircuit,
    IQPVariational,
    QuantumBoltzmannMachine,
    QuantumBoltzmannMachineSeparable,
    QuantumMetricLearner,
    TreeTensor,
    IQPKernel,
    ProjectedQuantumKernel,
    QuantumKitchenSinks,
    Quanvolutional,
    WeiNet,
    SeparableVariational,
    SeparableKernel,
    MLP,
    SVC,
    CNN,
};

inline const std::map<std::string, ModelKind> &model_kind_names() {
    static const std::map<std::string, ModelKind> names = {
        {"CircuitCentric", ModelKind::CircuitCentric},
        {"DataReuploading", ModelKind::DataReuploading},
        {"DressedQuantumCircuit", ModelKind::DressedQuantumCircuit},
        {"IQPVariational", ModelKind::IQPVariational},
        {"QuantumBoltzmannMachine", ModelKind::QuantumBoltzmannMachine},
        {"QuantumBoltzmannMachineSeparable",
         ModelKind::QuantumBoltzmannMachineSeparable},
        {"QuantumMetricLearner", ModelKind::QuantumMetricLearner},
        {"TreeTensor", ModelKind::TreeTensor},
        {"IQPKernel", ModelKind::IQPKernel},
        {"ProjectedQuantumKernel", ModelKind::ProjectedQuantumKernel},
        {"QuantumKitchenSinks", ModelKind::QuantumKitchenSinks},
        {"Quanvolutional", ModelKind::Quanvolutional},
        {"WeiNet", ModelKind::WeiNet},
        {"SeparableVariational", ModelKind::SeparableVariational},
        {"SeparableKernel", ModelKind::SeparableKernel},
        {"MLP", ModelKind::MLP},
        {"SVC", ModelKind::SVC},
        {"CNN", ModelKind::CNN},
    };
    return names;
}

inline std::string to_string(ModelKind kind) {
    for (const auto &[name, k] : model_kind_names()) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

inline ModelKind model_kind_from_string(const std::string &name) {
    const auto &names = model_kind_names();
    const auto it = names.find(name);
    require(it != names.end(), "unknown model kind '", name, "'");
    return it->second;
}

using HPValue = std::variant<long, double, std::string>;
using HPAssignment = std::map<std::string, HPValue>;

inline json hp_to_json(const HPAssignment &hp) {
    json j = json::object();
    for (const auto &[k, v] : hp) {
        std::visit([&](const auto &value) { j[k] = value; }, v);
    }
    return j;
}

inline HPAssignment hp_from_json(const json &j) {
    HPAssignment hp;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_number_integer()) {
            hp[it.key()] = it->get<long>();
        } else if (it->is_number_float()) {
            hp[it.key()] = it->get<double>();
        } else {
            hp[it.key()] = it->get<std::string>();
        }
    }
    return hp;
}

struct VariantFlags {
    bool no_entanglement = false;
    bool no_cost = false;
    bool no_scaling = false;
    bool no_trainable_embedding = false;

    json to_json() const {
        return {{"no_entanglement", no_entanglement},
                {"no_cost", no_cost},
                {"no_scaling", no_scaling},
                {"no_trainable_embedding", no_trainable_embedding}};
    }

    static VariantFlags from_json(const json &j) {
        VariantFlags f;
        f.no_entanglement = j.value("no_entanglement", false);
        f.no_cost = j.value("no_cost", false);
        f.no_scaling = j.value("no_scaling", false);
        f.no_trainable_embedding = j.value("no_trainable_embedding", false);
        return f;
    }
};

struct ModelSpec {
    ModelKind kind = ModelKind::SVC;
    HPAssignment hp;
    VariantFlags flags;
    std::uint64_t seed = 0;
    double input_scale = 1.0; // applied after the model's own preprocessing
    long max_steps = 10000;
    int max_qubits = 20;

    long hp_long(const std::string &name, long fallback) const {
        const auto it = hp.find(name);
        if (it == hp.end()) {
            return fallback;
        }
        if (const long *v = std::get_if<long>(&it->second)) {
            return *v;
        }
        if (const double *v = std::get_if<double>(&it->second)) {
            return static_cast<long>(*v);
        }
        throw InvalidArgument(format_msg("hyperparameter '", name,
                                         "' is not numeric"));
    }

    double hp_double(const std::string &name, double fallback) const {
        const auto it = hp.find(name);
        if (it == hp.end()) {
            return fallback;
        }
        if (const double *v = std::get_if<double>(&it->second)) {
            return *v;
        }
        if (const long *v = std::get_if<long>(&it->second)) {
            return static_cast<double>(*v);
        }
        throw InvalidArgument(format_msg("hyperparameter '", name,
                                         "' is not numeric"));
    }

    std::string hp_string(const std::string &name,
                          const std::string &fallback) const {
        const auto it = hp.find(name);
        if (it == hp.end()) {
            return fallback;
        }
        if (const std::string *v = std::get_if<std::string>(&it->second)) {
            return *v;
        }
        throw InvalidArgument(format_msg("hyperparameter '", name,
                                         "' is not a string"));
    }

    /// The ablation flags are DataReuploading features; no_entanglement
    /// applies to any model built from circuits.
    void validate_flags() const {
        const bool reupload_only =
            flags.no_cost || flags.no_scaling || flags.no_trainable_embedding;
        if (reupload_only) {
            require(kind == ModelKind::DataReuploading,
                    "flags no_cost/no_scaling/no_trainable_embedding are only "
                    "valid for DataReuploading");
            const int set = (flags.no_cost ? 1 : 0) +
                            (flags.no_scaling ? 1 : 0) +
                            (flags.no_trainable_embedding ? 1 : 0);
            require(set <= 1, "DataReuploading ablation flags are mutually "
                              "exclusive");
        }
        if (flags.no_entanglement) {
            require(kind != ModelKind::MLP && kind != ModelKind::SVC &&
                        kind != ModelKind::CNN,
                    "no_entanglement only applies to circuit models");
        }
    }

    json to_json() const {
        return {{"kind", to_string(kind)},
                {"hyperparameters", hp_to_json(hp)},
                {"flags", flags.to_json()},
                {"seed", seed},
                {"input_scale", input_scale},
                {"max_steps", max_steps},
                {"max_qubits", max_qubits}};
    }

    static ModelSpec from_json(const json &j) {
        ModelSpec s;
        s.kind = model_kind_from_string(j.at("kind").get<std::string>());
        s.hp = hp_from_json(j.at("hyperparameters"));
        s.flags = VariantFlags::from_json(j.at("flags"));
        s.seed = j.value("seed", std::uint64_t{0});
        s.input_scale = j.value("input_scale", 1.0);
        s.max_steps = j.value("max_steps", 10000L);
        s.max_qubits = j.value("max_qubits", 20);
        return s;
    }
};

/// Returns a copy of `base` with exactly one named DataReuploading variation
/// applied (or none for an empty name).
inline ModelSpec ablate_data_reuploading(const ModelSpec &base,
                                         const std::string &variant) {
    require(base.kind == ModelKind::DataReuploading,
            "ablate_data_reuploading: base kind must be DataReuploading");
    ModelSpec out = base;
    out.flags.no_cost = false;
    out.flags.no_scaling = false;
    out.flags.no_trainable_embedding = false;
    if (variant.empty()) {
        return out;
    }
    if (variant == "no_cost") {
        out.flags.no_cost = true;
    } else if (variant == "no_scaling") {
        out.flags.no_scaling = true;
    } else if (variant == "no_trainable_embedding") {
        out.flags.no_trainable_embedding = true;
    } else {
        throw InvalidArgument(
            format_msg("unknown DataReuploading variant '", variant, "'"));
    }
    out.validate_flags();
    return out;
}

} // namespace qmlbench::models
