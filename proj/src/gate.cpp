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

#include "kbudget/gate.hpp"

#include <cmath>
#include <string>

namespace kbudget {

namespace {

struct KindName {
    GateKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GateKind::Rx, "rx"},     {GateKind::Ry, "ry"},
    {GateKind::Rz, "rz"},     {GateKind::U1Q, "u1q"},
    {GateKind::CNOT, "cnot"}, {GateKind::CZ, "cz"},
    {GateKind::PartialSwap, "pswap"}, {GateKind::MeasureZ, "measure_z"},
};

} // namespace

std::string_view gate_kind_name(GateKind kind) {
    for (const auto &entry : kKindNames) {
        if (entry.kind == kind) {
            return entry.name;
        }
    }
    return "unknown";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &entry : kKindNames) {
        if (entry.name == name) {
            return entry.kind;
        }
    }
    return std::nullopt;
}

int Gate::arity() const {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::PartialSwap:
        return 2;
    default:
        return 1;
    }
}

bool Gate::has_angle() const {
    return kind == GateKind::Rx || kind == GateKind::Ry ||
           kind == GateKind::Rz || kind == GateKind::PartialSwap;
}

Unitary1Q<double> Gate::unitary_1q() const {
    switch (kind) {
    case GateKind::Rx:
        return rx_matrix(angle);
    case GateKind::Ry:
        return ry_matrix(angle);
    case GateKind::Rz:
        return rz_matrix(angle);
    case GateKind::U1Q:
        return matrix;
    default:
        throw InvalidGateError(std::string(gate_kind_name(kind)) +
                               " has no single-qubit unitary");
    }
}

Unitary2Q<double> Gate::unitary_2q() const {
    switch (kind) {
    case GateKind::CNOT:
        return cnot_matrix();
    case GateKind::CZ:
        return cz_matrix();
    case GateKind::PartialSwap:
        return partial_swap_matrix(angle);
    default:
        throw InvalidGateError(std::string(gate_kind_name(kind)) +
                               " is not a two-qubit gate");
    }
}

bool operator==(const Gate &a, const Gate &b) {
    if (a.kind != b.kind || a.qubits[0] != b.qubits[0]) {
        return false;
    }
    if (a.arity() == 2 && a.qubits[1] != b.qubits[1]) {
        return false;
    }
    if (a.has_angle() && a.angle != b.angle) {
        return false;
    }
    if (a.kind == GateKind::U1Q && a.matrix != b.matrix) {
        return false;
    }
    return true;
}

void Circuit::validate(double tol) const {
    if (num_qubits < 0) {
        throw InvalidGateError("negative qubit count");
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        const std::string where = "gate " + std::to_string(i) + " (" +
                                  std::string(gate_kind_name(g.kind)) + ")";
        for (int j = 0; j < g.arity(); ++j) {
            if (g.qubits[static_cast<std::size_t>(j)] < 0 ||
                g.qubits[static_cast<std::size_t>(j)] >= num_qubits) {
                throw InvalidGateError(where + ": qubit index out of range");
            }
        }
        if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
            throw InvalidGateError(where + ": both operands are the same qubit");
        }
        if (g.has_angle() && !std::isfinite(g.angle)) {
            throw InvalidGateError(where + ": angle is not finite");
        }
        if (g.kind == GateKind::U1Q && !is_unitary(g.matrix, tol)) {
            throw InvalidGateError(where + ": matrix is not unitary");
        }
    }
}

bool Circuit::has_measurement() const {
    for (const auto &g : gates) {
        if (g.kind == GateKind::MeasureZ) {
            return true;
        }
    }
    return false;
}

std::size_t Circuit::two_qubit_count() const {
    std::size_t count = 0;
    for (const auto &g : gates) {
        count += g.is_two_qubit() ? 1 : 0;
    }
    return count;
}

} // namespace kbudget
