// Copyright 2026 The kbudget Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "kbudget/budget.hpp"
#include "kbudget/gate.hpp"
#include "kbudget/statevec.hpp"

namespace kbudget {

/// Fixed CNOT layout with a Z-Y-Z Euler rotation on every qubit before,
/// between and after the CNOTs (num_layers = CNOTs + 1).
///
/// Parameters are stored layer-major: (a, b, c) for qubit q in layer l sit at
/// 3 * (l * num_qubits + q) and realize Rz(a) Ry(b) Rz(c).
struct Ansatz {
    int num_qubits = 0;
    std::vector<std::pair<int, int>> cnot_layout;

    int num_layers() const { return static_cast<int>(cnot_layout.size()) + 1; }
    int num_params() const { return 3 * num_qubits * num_layers(); }
    void validate() const;

    /// One CNOT (0, 1).
    static Ansatz two_qubit_default();
    /// (0, 1), (1, 2), (0, 2): three CNOTs, two per qubit.
    static Ansatz three_qubit_default();
};

/// Per-qubit participation in the layout, as control or target.
std::vector<Budget> layout_usage(const Ansatz &ansatz);

Circuit ansatz_circuit(const Ansatz &ansatz, const Eigen::VectorXd &params);
PureState<double> prepare(const Ansatz &ansatz, const Eigen::VectorXd &params);

/// 1 - |<target|prepared>|^2.
double infidelity(const PureState<double> &target, const Ansatz &ansatz,
                  const Eigen::VectorXd &params);

/// Exact gradient by the parameter-shift rule (every angle enters through a
/// single Pauli rotation).
Eigen::VectorXd infidelity_gradient(const PureState<double> &target,
                                    const Ansatz &ansatz,
                                    const Eigen::VectorXd &params);

Eigen::VectorXd central_difference_gradient(const PureState<double> &target,
                                            const Ansatz &ansatz,
                                            const Eigen::VectorXd &params,
                                            double step = 1e-5);

/// ||g_shift - g_central||_inf / max(||g_central||_inf, 1e-8).
double gradient_check(const PureState<double> &target, const Ansatz &ansatz,
                      const Eigen::VectorXd &params);

struct SynthesisOptions {
    int restarts = 8;
    int max_iters = 400;
    /// converged means infidelity at or below this.
    double converge_tol = 1e-6;
    /// A start stops early once it reaches this infidelity.
    double stop_tol = 1e-12;
    double gradient_tol = 1e-5;
    bool check_gradient = true;
};

struct SynthesisResult {
    Eigen::VectorXd best_params;
    double infidelity = 1.0;
    /// Iterations spent by the winning start.
    int iterations = 0;
    bool converged = false;
    int best_start = 0;
    /// Worst relative gradient mismatch over the checked start points.
    double gradient_error = 0.0;
    bool gradient_check_pass = true;
};

/// Multi-start quasi-Newton descent with backtracking line search. Start 0 is
/// `warm_start` when provided; the others are seeded from `seed`. Ties go to
/// the lowest start index.
SynthesisResult synthesize(const PureState<double> &target, const Ansatz &ansatz,
                           const SynthesisOptions &options, std::uint64_t seed,
                           std::optional<Eigen::VectorXd> warm_start = std::nullopt);

nlohmann::json to_json(const SynthesisResult &result, const Ansatz &ansatz);

} // namespace kbudget
