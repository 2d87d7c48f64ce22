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

#include <string>

#include "json.hpp"

#include "kbudget/gate.hpp"

namespace kbudget {

// {"num_qubits": n, "gates": [{"kind": "cnot", "qubits": [0, 1]},
//   {"kind": "rx", "qubits": [2], "angle": 0.5},
//   {"kind": "u1q", "qubits": [0], "matrix": [[re, im], x4 row-major]}]}

nlohmann::json circuit_to_json(const Circuit &circuit);
/// Throws ParameterError on schema violations, InvalidGateError on invalid
/// gates.
Circuit circuit_from_json(const nlohmann::json &j);

std::string serialize_circuit(const Circuit &circuit);
Circuit parse_circuit(const std::string &text);

} // namespace kbudget
