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
 * Model construction, serialization round-trip and the per-kind
 * hyperparameter grids. Grid iteration order is fixed: axes in declared
 * order, the last axis fastest; grid search tie-breaking depends on it.
 */
#pragma once

#include <memory>
#include <vector>

#include "qmlbench/models/classical_models.hpp"
#include "qmlbench/models/conv_models.hpp"
#include "qmlbench/models/circuit_models.hpp"
#include "qmlbench/models/kernel_models.hpp"
#include "qmlbench/models/metric_learner.hpp"
#include "qmlbench/models/model_spec.hpp"
#include "qmlbench/models/qbm.hpp"

namespace qmlbench::models {

struct GridAxis {
    std::string name;
    std::vector<HPValue> values;
};

inline std::vector<HPAssignment>
expand_grid(const std::vector<GridAxis> &axes) {
    std::vector<HPAssignment> out{{}};
    for (const auto &axis : axes) {
        std::vector<HPAssignment> next;
        next.reserve(out.size() * axis.values.size());
        for (const auto &partial : out) {
            for (const auto &value : axis.values) {
                HPAssignment combo = partial;
                combo[axis.name] = value;
                next.push_back(std::move(combo));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<GridAxis> grid_axes(ModelKind kind) {
    const std::vector<HPValue> lr3{0.001, 0.01, 0.1};
    const std::vector<HPValue> lr_small{0.0001, 0.001, 0.01};
    const std::vector<HPValue> svm_c{0.1, 1.0, 10.0, 100.0};
    switch (kind) {
    case ModelKind::CircuitCentric:
        return {{"learning_rate", lr3},
                {"n_layers", {1L, 5L, 10L}},
                {"n_input_copies", {1L, 2L, 3L}}};
    case ModelKind::DataReuploading:
        return {{"learning_rate", lr3},
                {"n_layers", {1L, 5L, 10L, 15L}},
                {"observable_type", {"single", "half", "full"}}};
    case ModelKind::DressedQuantumCircuit:
        return {{"learning_rate", lr3}, {"n_layers", {1L, 5L, 10L, 15L}}};
    case ModelKind::IQPVariational:
        return {{"learning_rate", lr3},
                {"n_layers", {1L, 5L, 10L, 15L}},
                {"repeats", {1L, 5L, 10L}}};
    case ModelKind::QuantumBoltzmannMachine:
    case ModelKind::QuantumBoltzmannMachineSeparable:
        return {{"learning_rate", lr3},
                {"temperature", {1.0, 10.0, 100.0}},
                {"visible_qubits", {"single", "half", "all"}}};
    case ModelKind::QuantumMetricLearner:
        return {{"learning_rate", lr3}, {"n_layers", {1L, 3L, 4L}}};
    case ModelKind::TreeTensor:
        return {{"learning_rate", lr3}};
    case ModelKind::IQPKernel:
        return {{"repeats", {1L, 5L, 10L}}, {"C", svm_c}};
    case ModelKind::ProjectedQuantumKernel:
        return {{"trotter_steps", {1L, 3L, 5L}},
                {"C", svm_c},
                {"t", {0.01, 0.1, 1.0}},
                {"gamma_factor", {0.1, 1.0, 10.0}}};
    case ModelKind::QuantumKitchenSinks:
        return {{"n_qfeatures", {"full", "half"}},
                {"n_episodes", {10L, 100L, 500L, 2000L}}};
    case ModelKind::Quanvolutional:
        return {{"learning_rate", lr_small},
                {"n_qchannels", {1L, 5L, 10L}},
                {"qkernel_shape", {2L, 3L}},
                {"kernel_shape", {2L, 3L, 5L}}};
    case ModelKind::WeiNet:
        return {{"learning_rate", lr_small},
                {"filter_type", {"edge_detect", "smooth", "sharpen"}}};
    case ModelKind::SeparableVariational:
        return {{"learning_rate", lr3},
                {"encoding_layers", {1L, 3L, 5L, 10L}}};
    case ModelKind::SeparableKernel:
        return {{"encoding_layers", {1L, 3L, 5L, 10L}}, {"C", svm_c}};
    case ModelKind::MLP:
        return {{"learning_rate", lr3},
                {"hidden_layer_sizes", {"100", "10,10,10,10", "50,10,5"}},
                {"alpha", {0.01, 0.001, 0.0001}}};
    case ModelKind::SVC:
        return {{"C", svm_c}, {"gamma", {0.001, 0.01, 0.1, 1.0}}};
    case ModelKind::CNN:
        return {{"learning_rate", lr_small}, {"kernel_shape", {2L, 3L, 5L}}};
    }
    throw InvalidArgument("unknown model kind");
}

inline std::vector<HPAssignment> hyperparameter_grid(ModelKind kind) {
    return expand_grid(grid_axes(kind));
}

/// Rejects hyperparameter names that the kind does not define.
inline void validate_hyperparameters(const ModelSpec &spec) {
    const auto axes = grid_axes(spec.kind);
    for (const auto &[name, value] : spec.hp) {
        bool known = false;
        for (const auto &axis : axes) {
            if (axis.name == name) {
                known = true;
                break;
            }
        }
        require(known, "model ", to_string(spec.kind),
                " has no hyperparameter named '", name, "'");
    }
}

inline std::unique_ptr<Classifier> make_model(const ModelSpec &spec) {
    spec.validate_flags();
    validate_hyperparameters(spec);
    switch (spec.kind) {
    case ModelKind::CircuitCentric:
        return std::make_unique<CircuitCentricModel>(spec);
    case ModelKind::DataReuploading:
        return std::make_unique<DataReuploadingModel>(spec);
    case ModelKind::DressedQuantumCircuit:
        return std::make_unique<DressedQuantumCircuitModel>(spec);
    case ModelKind::IQPVariational:
        return std::make_unique<IQPVariationalModel>(spec);
    case ModelKind::QuantumBoltzmannMachine:
        return std::make_unique<QuantumBoltzmannMachineModel>(spec, false);
    case ModelKind::QuantumBoltzmannMachineSeparable:
        return std::make_unique<QuantumBoltzmannMachineModel>(spec, true);
    case ModelKind::QuantumMetricLearner:
        return std::make_unique<QuantumMetricLearnerModel>(spec);
    case ModelKind::TreeTensor:
        return std::make_unique<TreeTensorModel>(spec);
    case ModelKind::IQPKernel:
        return std::make_unique<IQPKernelModel>(spec);
    case ModelKind::ProjectedQuantumKernel:
        return std::make_unique<ProjectedQuantumKernelModel>(spec);
    case ModelKind::QuantumKitchenSinks:
        return std::make_unique<QuantumKitchenSinksModel>(spec);
    case ModelKind::Quanvolutional:
        return std::make_unique<QuanvolutionalModel>(spec);
    case ModelKind::WeiNet:
        return std::make_unique<WeiNetModel>(spec);
    case ModelKind::SeparableVariational:
        return std::make_unique<SeparableVariationalModel>(spec);
    case ModelKind::SeparableKernel:
        return std::make_unique<SeparableKernelModel>(spec);
    case ModelKind::MLP:
        return std::make_unique<MLPClassifierModel>(spec);
    case ModelKind::SVC:
        return std::make_unique<SVCModel>(spec);
    case ModelKind::CNN:
        return std::make_unique<CNNClassifierModel>(spec);
    }
    throw InvalidArgument("unknown model kind");
}

/// Restores a trained model from Classifier::save() output.
inline std::unique_ptr<Classifier> model_from_json(const json &j) {
    const ModelSpec spec = ModelSpec::from_json(j.at("spec"));
    auto model = make_model(spec);
    switch (spec.kind) {
    case ModelKind::CircuitCentric:
        static_cast<CircuitCentricModel &>(*model).restore(j);
        break;
    case ModelKind::DataReuploading:
        static_cast<DataReuploadingModel &>(*model).restore(j);
        break;
    case ModelKind::DressedQuantumCircuit:
        static_cast<DressedQuantumCircuitModel &>(*model).restore(j);
        break;
    case ModelKind::IQPVariational:
        static_cast<IQPVariationalModel &>(*model).restore(j);
        break;
    case ModelKind::QuantumBoltzmannMachine:
    case ModelKind::QuantumBoltzmannMachineSeparable:
        static_cast<QuantumBoltzmannMachineModel &>(*model).restore(j);
        break;
    case ModelKind::QuantumMetricLearner:
        static_cast<QuantumMetricLearnerModel &>(*model).restore(j);
        break;
    case ModelKind::TreeTensor:
        static_cast<TreeTensorModel &>(*model).restore(j);
        break;
    case ModelKind::IQPKernel:
        static_cast<IQPKernelModel &>(*model).restore(j);
        break;
    case ModelKind::ProjectedQuantumKernel:
        static_cast<ProjectedQuantumKernelModel &>(*model).restore(j);
        break;
    case ModelKind::QuantumKitchenSinks:
        static_cast<QuantumKitchenSinksModel &>(*model).restore(j);
        break;
    case ModelKind::Quanvolutional:
        static_cast<QuanvolutionalModel &>(*model).restore(j);
        break;
    case ModelKind::WeiNet:
        static_cast<WeiNetModel &>(*model).restore(j);
        break;
    case ModelKind::SeparableVariational:
        static_cast<SeparableVariationalModel &>(*model).restore(j);
        break;
    case ModelKind::SeparableKernel:
        static_cast<SeparableKernelModel &>(*model).restore(j);
        break;
    case ModelKind::MLP:
        static_cast<MLPClassifierModel &>(*model).restore(j);
        break;
    case ModelKind::SVC:
        static_cast<SVCModel &>(*model).restore(j);
        break;
    case ModelKind::CNN:
        static_cast<CNNClassifierModel &>(*model).restore(j);
        break;
    }
    return model;
}

} // namespace qmlbench::models
