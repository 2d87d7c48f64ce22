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
#include <string_view>

#include "kbudget/gate.hpp"
#include "kbudget/statevec.hpp"

namespace kbudget {

inline constexpr std::uint64_t kDefaultSeed = 20150901;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for item `index` of the named stream:
/// splitmix64(splitmix64(master ^ fnv1a(stream)) + index).
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index);

double standard_normal(Rng &rng);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState<double> haar_state(int num_qubits, Rng &rng);

/// Haar-random 2x2 unitary (QR of a Ginibre matrix with phase correction).
Unitary1Q<double> haar_unitary_1q(Rng &rng);

struct RandomCircuitOptions {
    int min_gates = 0;
    int max_gates = 12;
    /// Probability that a gate is two-qubit (needs n >= 2).
    double two_qubit_fraction = 0.5;
    bool allow_partial_swap = true;
    bool allow_cz = true;
    bool allow_measurement = false;
};

/// Uniform gate count in [min_gates, max_gates], kinds and operands drawn at
/// random. Angles are uniform in [-pi, pi].
Circuit random_circuit(int num_qubits, Rng &rng,
                       const RandomCircuitOptions &options = {});

} // namespace kbudget
