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

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbudget/statevec.hpp"

namespace kbudget {

// Rotations are exp(-i angle P / 2) for P in {X, Y, Z}.

template <typename Scalar = double> Unitary1Q<Scalar> rx_matrix(Scalar angle) {
    const Scalar c = std::cos(angle / 2), s = std::sin(angle / 2);
    Unitary1Q<Scalar> m;
    m << std::complex<Scalar>(c, 0), std::complex<Scalar>(0, -s),
        std::complex<Scalar>(0, -s), std::complex<Scalar>(c, 0);
    return m;
}

template <typename Scalar = double> Unitary1Q<Scalar> ry_matrix(Scalar angle) {
    const Scalar c = std::cos(angle / 2), s = std::sin(angle / 2);
    Unitary1Q<Scalar> m;
    m << c, -s, s, c;
    return m;
}

template <typename Scalar = double> Unitary1Q<Scalar> rz_matrix(Scalar angle) {
    Unitary1Q<Scalar> m = Unitary1Q<Scalar>::Zero();
    m(0, 0) = std::polar(Scalar(1), -angle / 2);
    m(1, 1) = std::polar(Scalar(1), angle / 2);
    return m;
}

template <typename Scalar = double> Unitary1Q<Scalar> hadamard_matrix() {
    const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
    Unitary1Q<Scalar> m;
    m << h, h, h, -h;
    return m;
}

/// Control is the first tensor factor.
template <typename Scalar = double> Unitary2Q<Scalar> cnot_matrix() {
    Unitary2Q<Scalar> m = Unitary2Q<Scalar>::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

template <typename Scalar = double> Unitary2Q<Scalar> cz_matrix() {
    Unitary2Q<Scalar> m = Unitary2Q<Scalar>::Identity();
    m(3, 3) = -1;
    return m;
}

template <typename Scalar = double> Unitary2Q<Scalar> swap_matrix() {
    Unitary2Q<Scalar> m = Unitary2Q<Scalar>::Zero();
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    return m;
}

/// cos(phi) I + i sin(phi) SWAP.
template <typename Scalar = double>
Unitary2Q<Scalar> partial_swap_matrix(Scalar phi) {
    const std::complex<Scalar> c(std::cos(phi), 0), is(0, std::sin(phi));
    Unitary2Q<Scalar> m =
        c * Unitary2Q<Scalar>::Identity() + is * swap_matrix<Scalar>();
    return m;
}

enum class GateKind { Rx, Ry, Rz, U1Q, CNOT, CZ, PartialSwap, MeasureZ };

/// Wire name used in JSON and logs: "rx", "cnot", "pswap", ...
std::string_view gate_kind_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

struct Gate {
    GateKind kind = GateKind::U1Q;
    std::array<int, 2> qubits{0, 0};
    double angle = 0.0;
    Unitary1Q<double> matrix = Unitary1Q<double>::Identity();

    static Gate rx(int q, double angle) { return {GateKind::Rx, {q, 0}, angle}; }
    static Gate ry(int q, double angle) { return {GateKind::Ry, {q, 0}, angle}; }
    static Gate rz(int q, double angle) { return {GateKind::Rz, {q, 0}, angle}; }
    static Gate u1q(int q, const Unitary1Q<double> &m) {
        return {GateKind::U1Q, {q, 0}, 0.0, m};
    }
    static Gate hadamard(int q) { return u1q(q, hadamard_matrix()); }
    static Gate cnot(int control, int target) {
        return {GateKind::CNOT, {control, target}};
    }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
    static Gate partial_swap(int a, int b, double phi) {
        return {GateKind::PartialSwap, {a, b}, phi};
    }
    static Gate measure_z(int q) { return {GateKind::MeasureZ, {q, 0}}; }

    int arity() const;
    bool is_two_qubit() const { return arity() == 2; }
    bool has_angle() const;

    /// Only meaningful for single-qubit unitary kinds.
    Unitary1Q<double> unitary_1q() const;
    /// Only meaningful for two-qubit kinds.
    Unitary2Q<double> unitary_2q() const;

    /// Structural equality; unused fields are ignored.
    friend bool operator==(const Gate &a, const Gate &b);
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : num_qubits(n) {}

    Circuit &add(Gate g) {
        gates.push_back(std::move(g));
        return *this;
    }

    /// Throws InvalidGateError on out-of-range or repeated qubits, non-finite
    /// angles or non-unitary matrices.
    void validate(double tol = kDefaultTolerance) const;

    bool has_measurement() const;
    /// Number of two-qubit gates.
    std::size_t two_qubit_count() const;

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.num_qubits == b.num_qubits && a.gates == b.gates;
    }
};

} // namespace kbudget
