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

#include "kbudget/circuit_json.hpp"

namespace kbudget {

namespace {

nlohmann::json gate_to_json(const Gate &g) {
    nlohmann::json j;
    j["kind"] = gate_kind_name(g.kind);
    if (g.arity() == 2) {
        j["qubits"] = {g.qubits[0], g.qubits[1]};
    } else {
        j["qubits"] = {g.qubits[0]};
    }
    if (g.has_angle()) {
        j["angle"] = g.angle;
    }
    if (g.kind == GateKind::U1Q) {
        auto m = nlohmann::json::array();
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                m.push_back({g.matrix(r, c).real(), g.matrix(r, c).imag()});
            }
        }
        j["matrix"] = std::move(m);
    }
    return j;
}

[[noreturn]] void schema_error(std::size_t index, const std::string &what) {
    throw ParameterError("circuit JSON, gate " + std::to_string(index) + ": " +
                         what);
}

Gate gate_from_json(const nlohmann::json &j, std::size_t index) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        schema_error(index, "missing string field 'kind'");
    }
    const auto kind = gate_kind_from_name(j["kind"].get<std::string>());
    if (!kind) {
        schema_error(index, "unknown kind '" + j["kind"].get<std::string>() + "'");
    }
    Gate g;
    g.kind = *kind;
    if (!j.contains("qubits") || !j["qubits"].is_array() ||
        static_cast<int>(j["qubits"].size()) != g.arity()) {
        schema_error(index, "'qubits' must list " + std::to_string(g.arity()) +
                                " indices");
    }
    for (int i = 0; i < g.arity(); ++i) {
        const auto &q = j["qubits"][static_cast<std::size_t>(i)];
        if (!q.is_number_integer()) {
            schema_error(index, "qubit indices must be integers");
        }
        g.qubits[static_cast<std::size_t>(i)] = q.get<int>();
    }
    if (g.has_angle()) {
        if (!j.contains("angle") || !j["angle"].is_number()) {
            schema_error(index, "missing numeric 'angle'");
        }
        g.angle = j["angle"].get<double>();
    }
    if (g.kind == GateKind::U1Q) {
        const auto &m = j.value("matrix", nlohmann::json());
        if (!m.is_array() || m.size() != 4) {
            schema_error(index, "'matrix' must hold four [re, im] pairs");
        }
        for (std::size_t e = 0; e < 4; ++e) {
            if (!m[e].is_array() || m[e].size() != 2 || !m[e][0].is_number() ||
                !m[e][1].is_number()) {
                schema_error(index, "matrix entries must be [re, im] pairs");
            }
            g.matrix(static_cast<Eigen::Index>(e / 2),
                     static_cast<Eigen::Index>(e % 2)) = {m[e][0].get<double>(),
                                                          m[e][1].get<double>()};
        }
    }
    return g;
}

} // namespace

nlohmann::json circuit_to_json(const Circuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : circuit.gates) {
        gates.push_back(gate_to_json(g));
    }
    return {{"num_qubits", circuit.num_qubits}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("num_qubits") ||
        !j["num_qubits"].is_number_integer()) {
        throw ParameterError("circuit JSON needs integer 'num_qubits'");
    }
    if (!j.contains("gates") || !j["gates"].is_array()) {
        throw ParameterError("circuit JSON needs array 'gates'");
    }
    Circuit c(j["num_qubits"].get<int>());
    for (std::size_t i = 0; i < j["gates"].size(); ++i) {
        c.add(gate_from_json(j["gates"][i], i));
    }
    c.validate();
    return c;
}

std::string serialize_circuit(const Circuit &circuit) {
    return circuit_to_json(circuit).dump();
}

Circuit parse_circuit(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParameterError(std::string("circuit JSON: ") + e.what());
    }
    return circuit_from_json(j);
}

} // namespace kbudget
