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
#include <utility>
#include <vector>

#include "kbudget/budget.hpp"
#include "kbudget/gate.hpp"
#include "kbudget/statevec.hpp"

namespace kbudget {

struct MeasurementRecord {
    std::size_t gate_index = 0;
    int qubit = 0;
    int outcome = 0;
};

struct RunResult {
    PureState<double> state;
    InteractionLedger ledger;
    std::vector<SuppressionRecord> suppressions;
    /// Indices of the two-qubit gates that acted.
    std::vector<std::size_t> applied;
    std::vector<MeasurementRecord> measurements;
};

struct RunOptions {
    ChargeSchedule schedule{};
    /// When false no gate is charged or suppressed (plain circuit model).
    bool charging = true;
    int qubit_cap = kDefaultQubitCap;
};

/// Applies the circuit's gates in list order to `state`. Two-qubit gates pass
/// through the ledger first. MeasureZ collapses the qubit in place and the
/// outcome is recorded; the qubit keeps its index. Record indices are offset
/// by `gate_offset` so several passes can share one log.
void execute(const Circuit &circuit, PureState<double> &state,
             InteractionLedger &ledger, Rng &rng, RunResult &log,
             const RunOptions &options = {}, std::size_t gate_offset = 0);

/// Runs from |0...0> with a fresh ledger of cap K.
RunResult run(const Circuit &circuit, Budget cap, BudgetPolicy policy,
              std::uint64_t seed, const RunOptions &options = {});

/// Same as run() with charging disabled.
RunResult run_unrestricted(const Circuit &circuit, std::uint64_t seed = 0,
                           int qubit_cap = kDefaultQubitCap);

/// H on qubit 0 followed by CNOT(i, i+1).
Circuit ghz_chain(int n);

/// Two qubits in sqrt(p)|00> + sqrt(1-p)|11>: Ry(2 acos sqrt p) on 0, CNOT(0,1).
Circuit bath_pair_prep(double p);

struct ClusterPatch {
    Circuit circuit;
    std::vector<std::pair<int, int>> edges;
    /// Lattice coordinates (column, row) of each vertex, for display.
    std::vector<std::pair<int, int>> coordinates;

    std::vector<std::vector<int>> neighbours() const;
    int max_degree() const;
};

/// |+>^n followed by CZ on each listed edge, in order.
ClusterPatch graph_state(int num_vertices,
                         std::vector<std::pair<int, int>> edges);

/// Honeycomb patch of rows x cols hexagons in brick-wall embedding. Every
/// vertex has degree at most 3.
ClusterPatch hex_cluster(int rows, int cols, int qubit_cap = kDefaultQubitCap);

/// Reversed circuit of inverses. Throws NotInvertibleError on measurements.
Circuit dagger(const Circuit &circuit);

/// Concatenation with a matching qubit count.
Circuit concat(const Circuit &first, const Circuit &second);

struct SchmidtPrep {
    Circuit circuit;
    double theta = 0.0;
    /// Schmidt coefficients, larger first.
    std::array<double, 2> coefficients{1.0, 0.0};
    Unitary1Q<double> a = Unitary1Q<double>::Identity();
    Unitary1Q<double> b = Unitary1Q<double>::Identity();
    bool uses_cnot = false;
};

/// Prepares a two-qubit target from |00> with at most one CNOT via its
/// Schmidt decomposition. The CNOT is dropped when the smaller Schmidt
/// coefficient is below 1e-12.
SchmidtPrep schmidt_2q_prep(const PureState<double> &target,
                            double tol = kDefaultTolerance);

} // namespace kbudget
