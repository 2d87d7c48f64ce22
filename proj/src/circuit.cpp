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

#include "kbudget/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace kbudget {

void execute(const Circuit &circuit, PureState<double> &state,
             InteractionLedger &ledger, Rng &rng, RunResult &log,
             const RunOptions &options, std::size_t gate_offset) {
    if (state.num_qubits() != circuit.num_qubits) {
        throw DimensionMismatchError("state and circuit qubit counts differ");
    }
    if (options.charging && ledger.num_qubits() != circuit.num_qubits) {
        throw DimensionMismatchError("ledger and circuit qubit counts differ");
    }
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate &g = circuit.gates[i];
        const std::size_t index = gate_offset + i;
        auto &amps = state.mutable_amplitudes();
        if (g.kind == GateKind::MeasureZ) {
            log.measurements.push_back(
                {index, g.qubits[0], measure_collapse(state, g.qubits[0], rng)});
            continue;
        }
        if (!g.is_two_qubit()) {
            detail::apply_1q_kernel<double>(amps, g.unitary_1q(), g.qubits[0]);
            continue;
        }
        if (options.charging) {
            const std::array<Budget, 2> before{ledger.usage(g.qubits[0]),
                                               ledger.usage(g.qubits[1])};
            const Decision d = ledger.try_interact(
                g.qubits[0], g.qubits[1], options.schedule.cost(g.kind));
            if (d == Decision::Suppressed) {
                log.suppressions.push_back({index, g.kind, g.qubits, before});
                continue;
            }
        }
        log.applied.push_back(index);
        detail::apply_2q_kernel<double>(amps, g.unitary_2q(), g.qubits[0],
                                        g.qubits[1]);
    }
}

RunResult run(const Circuit &circuit, Budget cap, BudgetPolicy policy,
              std::uint64_t seed, const RunOptions &options) {
    circuit.validate();
    RunResult result{PureState<double>(circuit.num_qubits, options.qubit_cap),
                     InteractionLedger(circuit.num_qubits, cap, policy),
                     {},
                     {},
                     {}};
    Rng rng(seed);
    execute(circuit, result.state, result.ledger, rng, result, options);
    return result;
}

RunResult run_unrestricted(const Circuit &circuit, std::uint64_t seed,
                           int qubit_cap) {
    RunOptions options;
    options.charging = false;
    options.qubit_cap = qubit_cap;
    return run(circuit, kUnlimitedBudget, BudgetPolicy::EitherExhausted, seed,
               options);
}

Circuit ghz_chain(int n) {
    if (n < 1) {
        throw ParameterError("GHZ chain needs at least one qubit");
    }
    Circuit c(n);
    c.add(Gate::hadamard(0));
    for (int i = 0; i + 1 < n; ++i) {
        c.add(Gate::cnot(i, i + 1));
    }
    return c;
}

Circuit bath_pair_prep(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("probability must lie in [0, 1]");
    }
    Circuit c(2);
    c.add(Gate::ry(0, 2.0 * std::acos(std::sqrt(p))));
    c.add(Gate::cnot(0, 1));
    return c;
}

std::vector<std::vector<int>> ClusterPatch::neighbours() const {
    std::vector<std::vector<int>> adj(
        static_cast<std::size_t>(circuit.num_qubits));
    for (const auto &[a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

int ClusterPatch::max_degree() const {
    int m = 0;
    for (const auto &nb : neighbours()) {
        m = std::max(m, static_cast<int>(nb.size()));
    }
    return m;
}

ClusterPatch graph_state(int num_vertices,
                         std::vector<std::pair<int, int>> edges) {
    ClusterPatch patch{Circuit(num_vertices), std::move(edges), {}};
    for (int v = 0; v < num_vertices; ++v) {
        patch.circuit.add(Gate::hadamard(v));
        patch.coordinates.emplace_back(v, 0);
    }
    for (const auto &[a, b] : patch.edges) {
        patch.circuit.add(Gate::cz(a, b));
    }
    patch.circuit.validate();
    return patch;
}

ClusterPatch hex_cluster(int rows, int cols, int qubit_cap) {
    if (rows < 1 || cols < 1) {
        throw ParameterError("hexagonal patch needs rows, cols >= 1");
    }
    // Brick row r spans lattice rows r and r+1; its bricks start at column
    // 2c + (r mod 2) and are three sites wide.
    using Site = std::pair<int, int>; // (row, column), ordered row-major
    std::set<std::pair<Site, Site>> edge_set;
    std::set<Site> sites;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int x0 = 2 * c + (r % 2);
            for (int y : {r, r + 1}) {
                edge_set.insert({{y, x0}, {y, x0 + 1}});
                edge_set.insert({{y, x0 + 1}, {y, x0 + 2}});
                for (int dx = 0; dx <= 2; ++dx) {
                    sites.insert({y, x0 + dx});
                }
            }
            edge_set.insert({{r, x0}, {r + 1, x0}});
            edge_set.insert({{r, x0 + 2}, {r + 1, x0 + 2}});
        }
    }
    const int n = static_cast<int>(sites.size());
    detail::check_capacity(n, qubit_cap);
    std::map<Site, int> index;
    std::vector<std::pair<int, int>> coordinates;
    for (const auto &s : sites) {
        index[s] = static_cast<int>(index.size());
        coordinates.emplace_back(s.second, s.first);
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto &[a, b] : edge_set) {
        edges.emplace_back(index.at(a), index.at(b));
    }
    ClusterPatch patch = graph_state(n, std::move(edges));
    patch.coordinates = std::move(coordinates);
    return patch;
}

Circuit dagger(const Circuit &circuit) {
    Circuit out(circuit.num_qubits);
    out.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
        case GateKind::MeasureZ:
            throw NotInvertibleError("circuit with measurements has no inverse");
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::PartialSwap:
            g.angle = -g.angle;
            break;
        case GateKind::U1Q:
            g.matrix = g.matrix.adjoint().eval();
            break;
        case GateKind::CNOT:
        case GateKind::CZ:
            break;
        }
        out.gates.push_back(std::move(g));
    }
    return out;
}

Circuit concat(const Circuit &first, const Circuit &second) {
    if (first.num_qubits != second.num_qubits) {
        throw DimensionMismatchError("cannot concatenate circuits of different width");
    }
    Circuit out = first;
    out.gates.insert(out.gates.end(), second.gates.begin(), second.gates.end());
    return out;
}

SchmidtPrep schmidt_2q_prep(const PureState<double> &target, double tol) {
    if (target.num_qubits() != 2) {
        throw DimensionMismatchError("Schmidt preparation needs a two-qubit target");
    }
    if (std::abs(target.norm_squared() - 1.0) > tol) {
        throw ParameterError("target state is not normalized");
    }
    // psi = sum_{a,b} m(a, b) |a>_0 |b>_1 with index a + 2b.
    Eigen::Matrix2cd m;
    m << target[0], target[2], target[1], target[3];
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU |
                                                  Eigen::ComputeFullV);
    SchmidtPrep prep;
    prep.coefficients = {svd.singularValues()[0], svd.singularValues()[1]};
    prep.uses_cnot = prep.coefficients[1] >= 1e-12;
    prep.theta =
        prep.uses_cnot ? 2.0 * std::acos(std::min(1.0, prep.coefficients[0]))
                       : 0.0;
    // m = U S V^dagger, so psi = sum_k s_k (U|k>) (conj(V)|k>).
    prep.a = svd.matrixU();
    prep.b = svd.matrixV().conjugate();

    prep.circuit = Circuit(2);
    prep.circuit.add(Gate::ry(0, prep.theta));
    if (prep.uses_cnot) {
        prep.circuit.add(Gate::cnot(0, 1));
    }
    prep.circuit.add(Gate::u1q(0, prep.a));
    prep.circuit.add(Gate::u1q(1, prep.b));
    return prep;
}

} // namespace kbudget
