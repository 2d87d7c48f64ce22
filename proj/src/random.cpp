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

#include "kbudget/random.hpp"

#include <cmath>
#include <numbers>

namespace kbudget {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char ch : stream) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001B3ULL;
    }
    return splitmix64(splitmix64(master ^ h) + index);
}

double standard_normal(Rng &rng) {
    // Box-Muller on two platform-independent uniforms.
    const double u1 = 1.0 - detail::uniform01(rng); // (0, 1]
    const double u2 = detail::uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

PureState<double> haar_state(int num_qubits, Rng &rng) {
    Amplitudes<double> amps(Eigen::Index{1} << num_qubits);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        amps[i] = {re, im};
    }
    amps /= amps.norm();
    return PureState<double>::from_amplitudes(std::move(amps));
}

Unitary1Q<double> haar_unitary_1q(Rng &rng) {
    Unitary1Q<double> g;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const double re = standard_normal(rng);
            const double im = standard_normal(rng);
            g(r, c) = {re, im};
        }
    }
    Eigen::HouseholderQR<Unitary1Q<double>> qr(g);
    Unitary1Q<double> q = qr.householderQ();
    const Unitary1Q<double> rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) {
        const auto d = rmat(c, c);
        q.col(c) *= d / std::abs(d);
    }
    return q;
}

namespace {

double uniform_angle(Rng &rng) {
    return (2.0 * detail::uniform01(rng) - 1.0) * std::numbers::pi;
}

int uniform_int(Rng &rng, int lo, int hi) { // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

} // namespace

Circuit random_circuit(int num_qubits, Rng &rng,
                       const RandomCircuitOptions &options) {
    Circuit c(num_qubits);
    const int count = uniform_int(rng, options.min_gates, options.max_gates);
    for (int i = 0; i < count; ++i) {
        const bool two = num_qubits >= 2 &&
                         detail::uniform01(rng) < options.two_qubit_fraction;
        if (two) {
            const int a = uniform_int(rng, 0, num_qubits - 1);
            int b = uniform_int(rng, 0, num_qubits - 2);
            if (b >= a) {
                ++b;
            }
            const double r = detail::uniform01(rng);
            if (options.allow_partial_swap && r < 0.25) {
                c.add(Gate::partial_swap(a, b, uniform_angle(rng)));
            } else if (options.allow_cz && r < 0.55) {
                c.add(Gate::cz(a, b));
            } else {
                c.add(Gate::cnot(a, b));
            }
            continue;
        }
        const int q = uniform_int(rng, 0, num_qubits - 1);
        if (options.allow_measurement && detail::uniform01(rng) < 0.1) {
            c.add(Gate::measure_z(q));
            continue;
        }
        switch (uniform_int(rng, 0, 3)) {
        case 0:
            c.add(Gate::rx(q, uniform_angle(rng)));
            break;
        case 1:
            c.add(Gate::ry(q, uniform_angle(rng)));
            break;
        case 2:
            c.add(Gate::rz(q, uniform_angle(rng)));
            break;
        default:
            c.add(Gate::u1q(q, haar_unitary_1q(rng)));
            break;
        }
    }
    return c;
}

} // namespace kbudget
