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

// Dense statevector engine. Qubit 0 is the least-significant bit of the
// amplitude index. Gates act in place over strided amplitude pairs and
// quadruples; full 2^n x 2^n operators are never formed.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kbudget/errors.hpp"

namespace kbudget {

inline constexpr int kDefaultQubitCap = 24;
inline constexpr double kDefaultTolerance = 1e-10;

template <typename Scalar>
using Amplitudes = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using Unitary1Q = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Unitary2Q = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using DensityMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Source of randomness for measurements. Seeded explicitly everywhere.
using Rng = std::mt19937_64;

namespace detail {

inline void check_capacity(int num_qubits, int qubit_cap) {
    if (num_qubits < 0) {
        throw ParameterError("negative qubit count");
    }
    if (num_qubits > qubit_cap) {
        throw CapacityError("register of " + std::to_string(num_qubits) +
                            " qubits exceeds cap of " +
                            std::to_string(qubit_cap));
    }
}

inline void check_qubit(int q, int num_qubits) {
    if (q < 0 || q >= num_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(q) +
                                " out of range for " +
                                std::to_string(num_qubits) + " qubits");
    }
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Scalar>
void apply_1q_kernel(Eigen::Ref<Amplitudes<Scalar>> amps,
                     const Unitary1Q<Scalar> &u, int q) {
    const Eigen::Index dim = amps.size();
    const Eigen::Index stride = Eigen::Index{1} << q;
    const auto u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
        for (Eigen::Index i0 = block; i0 < block + stride; ++i0) {
            const Eigen::Index i1 = i0 + stride;
            const auto a0 = amps[i0];
            const auto a1 = amps[i1];
            amps[i0] = u00 * a0 + u01 * a1;
            amps[i1] = u10 * a0 + u11 * a1;
        }
    }
}

inline std::uint64_t insert_zero_bit(std::uint64_t value, int bit) {
    const std::uint64_t low = value & ((std::uint64_t{1} << bit) - 1);
    return ((value >> bit) << (bit + 1)) | low;
}

// Local basis index is (b1 << 1) | b2, i.e. q1 is the first tensor factor.
template <typename Scalar>
void apply_2q_kernel(Eigen::Ref<Amplitudes<Scalar>> amps,
                     const Unitary2Q<Scalar> &u, int q1, int q2) {
    const int lo = std::min(q1, q2);
    const int hi = std::max(q1, q2);
    const std::uint64_t m1 = std::uint64_t{1} << q1;
    const std::uint64_t m2 = std::uint64_t{1} << q2;
    const auto quarter = static_cast<std::uint64_t>(amps.size()) / 4;
    for (std::uint64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
        const std::uint64_t idx[4] = {base, base | m2, base | m1,
                                      base | m1 | m2};
        std::complex<Scalar> v[4];
        for (int j = 0; j < 4; ++j) {
            v[j] = amps[static_cast<Eigen::Index>(idx[j])];
        }
        for (int r = 0; r < 4; ++r) {
            amps[static_cast<Eigen::Index>(idx[r])] =
                u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] +
                u(r, 3) * v[3];
        }
    }
}

// offsets[r] places the bits of r onto the listed qubit positions.
inline std::vector<std::uint64_t> scatter_offsets(const std::vector<int> &qubits) {
    std::vector<std::uint64_t> offsets(std::size_t{1} << qubits.size(), 0);
    for (std::size_t r = 0; r < offsets.size(); ++r) {
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            if ((r >> j) & 1U) {
                offsets[r] |= std::uint64_t{1} << qubits[j];
            }
        }
    }
    return offsets;
}

inline std::vector<int> complement_qubits(const std::vector<int> &keep,
                                          int num_qubits) {
    if (keep.empty()) {
        throw ParameterError("partial trace needs a non-empty keep set");
    }
    std::vector<bool> kept(static_cast<std::size_t>(num_qubits), false);
    for (int q : keep) {
        check_qubit(q, num_qubits);
        if (kept[static_cast<std::size_t>(q)]) {
            throw ParameterError("duplicate qubit " + std::to_string(q) +
                                 " in keep set");
        }
        kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> env;
    for (int q = 0; q < num_qubits; ++q) {
        if (!kept[static_cast<std::size_t>(q)]) {
            env.push_back(q);
        }
    }
    return env;
}

} // namespace detail

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived> &u,
                typename Derived::RealScalar tol = kDefaultTolerance) {
    if (u.rows() != u.cols()) {
        return false;
    }
    const auto gram = (u.adjoint() * u).eval();
    using Plain = typename Derived::PlainObject;
    return (gram - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <=
           tol;
}

/// Normalized n-qubit pure state held as 2^n complex amplitudes.
template <typename Scalar = double> class PureState {
  public:
    using Complex = std::complex<Scalar>;

    /// |0...0> on num_qubits qubits.
    explicit PureState(int num_qubits = 0, int qubit_cap = kDefaultQubitCap)
        : num_qubits_(num_qubits) {
        detail::check_capacity(num_qubits, qubit_cap);
        amplitudes_ = Amplitudes<Scalar>::Zero(Eigen::Index{1} << num_qubits);
        amplitudes_[0] = Complex(1);
    }

    /// Adopts the given amplitudes. Length must be a power of two and the
    /// norm must be one within tol; no silent renormalization.
    static PureState from_amplitudes(Amplitudes<Scalar> amps,
                                     Scalar tol = kDefaultTolerance,
                                     int qubit_cap = kDefaultQubitCap) {
        const auto size = static_cast<std::uint64_t>(amps.size());
        if (size == 0 || !std::has_single_bit(size)) {
            throw DimensionMismatchError(
                "amplitude count must be a power of two");
        }
        const int n = std::countr_zero(size);
        detail::check_capacity(n, qubit_cap);
        if (std::abs(amps.squaredNorm() - Scalar(1)) > tol) {
            throw ParameterError("amplitudes are not normalized");
        }
        PureState state(n, std::move(amps));
        return state;
    }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const Amplitudes<Scalar> &amplitudes() const { return amplitudes_; }
    /// Raw access for kernels; callers keep the norm invariant.
    Amplitudes<Scalar> &mutable_amplitudes() { return amplitudes_; }
    const Complex &operator[](Eigen::Index i) const { return amplitudes_[i]; }
    Scalar norm_squared() const { return amplitudes_.squaredNorm(); }

  private:
    PureState(int num_qubits, Amplitudes<Scalar> amps)
        : num_qubits_(num_qubits), amplitudes_(std::move(amps)) {}

    int num_qubits_;
    Amplitudes<Scalar> amplitudes_;
};

/// Density matrix over num_qubits qubits, bit j of the row index is qubit j.
template <typename Scalar = double> class MixedState {
  public:
    /// Validates Hermiticity, unit trace and positivity (eigenvalues >= -1e-10).
    static MixedState from_matrix(DensityMatrix<Scalar> m,
                                  Scalar tol = kDefaultTolerance) {
        const auto size = static_cast<std::uint64_t>(m.rows());
        if (m.rows() != m.cols() || size < 2 || !std::has_single_bit(size)) {
            throw DimensionMismatchError(
                "density matrix must be square with power-of-two size >= 2");
        }
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
            throw ParameterError("density matrix is not Hermitian");
        }
        if (std::abs(m.trace() - std::complex<Scalar>(1)) > tol) {
            throw ParameterError("density matrix trace differs from one");
        }
        Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> es(
            m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol) {
            throw ParameterError("density matrix has a negative eigenvalue");
        }
        return MixedState(std::countr_zero(size), std::move(m));
    }

    static MixedState from_pure(const PureState<Scalar> &psi) {
        const auto &a = psi.amplitudes();
        return MixedState(psi.num_qubits(), a * a.adjoint());
    }

    int num_qubits() const { return num_qubits_; }
    const DensityMatrix<Scalar> &matrix() const { return matrix_; }

  private:
    template <typename S>
    friend MixedState<S> partial_trace(const PureState<S> &,
                                       const std::vector<int> &);
    template <typename S>
    friend MixedState<S> partial_trace(const MixedState<S> &,
                                       const std::vector<int> &);

    MixedState(int num_qubits, DensityMatrix<Scalar> m)
        : num_qubits_(num_qubits), matrix_(std::move(m)) {}

    int num_qubits_;
    DensityMatrix<Scalar> matrix_;
};

template <typename Scalar = double>
PureState<Scalar> zero_state(int num_qubits,
                             int qubit_cap = kDefaultQubitCap) {
    return PureState<Scalar>(num_qubits, qubit_cap);
}

template <typename Scalar>
PureState<Scalar> &apply_1q(PureState<Scalar> &state,
                            const Unitary1Q<Scalar> &u, int q,
                            Scalar tol = kDefaultTolerance) {
    detail::check_qubit(q, state.num_qubits());
    if (!is_unitary(u, tol)) {
        throw InvalidGateError("single-qubit matrix is not unitary");
    }
    detail::apply_1q_kernel<Scalar>(state.mutable_amplitudes(), u, q);
    return state;
}

template <typename Scalar>
PureState<Scalar> &apply_2q(PureState<Scalar> &state,
                            const Unitary2Q<Scalar> &u, int q1, int q2,
                            Scalar tol = kDefaultTolerance) {
    detail::check_qubit(q1, state.num_qubits());
    detail::check_qubit(q2, state.num_qubits());
    if (q1 == q2) {
        throw InvalidGateError("two-qubit gate on a single qubit");
    }
    if (!is_unitary(u, tol)) {
        throw InvalidGateError("two-qubit matrix is not unitary");
    }
    detail::apply_2q_kernel<Scalar>(state.mutable_amplitudes(), u, q1, q2);
    return state;
}

/// Reduced state on `keep`; keep[j] becomes bit j of the reduced index.
template <typename Scalar>
MixedState<Scalar> partial_trace(const PureState<Scalar> &state,
                                 const std::vector<int> &keep) {
    const auto env = detail::complement_qubits(keep, state.num_qubits());
    const auto keep_off = detail::scatter_offsets(keep);
    const auto env_off = detail::scatter_offsets(env);
    DensityMatrix<Scalar> psi(static_cast<Eigen::Index>(keep_off.size()),
                              static_cast<Eigen::Index>(env_off.size()));
    for (std::size_t e = 0; e < env_off.size(); ++e) {
        for (std::size_t r = 0; r < keep_off.size(); ++r) {
            psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e)) =
                state[static_cast<Eigen::Index>(keep_off[r] | env_off[e])];
        }
    }
    return MixedState<Scalar>(static_cast<int>(keep.size()),
                              psi * psi.adjoint());
}

template <typename Scalar>
MixedState<Scalar> partial_trace(const MixedState<Scalar> &state,
                                 const std::vector<int> &keep) {
    const auto env = detail::complement_qubits(keep, state.num_qubits());
    const auto keep_off = detail::scatter_offsets(keep);
    const auto env_off = detail::scatter_offsets(env);
    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    DensityMatrix<Scalar> out = DensityMatrix<Scalar>::Zero(dk, dk);
    const auto &m = state.matrix();
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            std::complex<Scalar> acc(0);
            for (auto e : env_off) {
                acc += m(static_cast<Eigen::Index>(keep_off[r] | e),
                         static_cast<Eigen::Index>(keep_off[c] | e));
            }
            out(r, c) = acc;
        }
    }
    return MixedState<Scalar>(static_cast<int>(keep.size()), std::move(out));
}

/// Half the trace norm of a - b.
template <typename Scalar>
Scalar trace_distance(const MixedState<Scalar> &a, const MixedState<Scalar> &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionMismatchError("trace distance of states of different size");
    }
    const DensityMatrix<Scalar> diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> es(
        diff, Eigen::EigenvaluesOnly);
    return Scalar(0.5) * es.eigenvalues().cwiseAbs().sum();
}

/// |<a|b>|^2.
template <typename Scalar>
Scalar fidelity(const PureState<Scalar> &a, const PureState<Scalar> &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionMismatchError("fidelity of states of different size");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// Probability that measuring qubit q in the Z basis yields 1.
template <typename Scalar>
Scalar probability_one(const PureState<Scalar> &state, int q) {
    detail::check_qubit(q, state.num_qubits());
    const std::uint64_t mask = std::uint64_t{1} << q;
    Scalar p1 = 0;
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        if (static_cast<std::uint64_t>(i) & mask) {
            p1 += std::norm(state[i]);
        }
    }
    return p1;
}

/// Born-rule Z measurement of qubit q; the qubit stays in the register,
/// projected onto the outcome. Consumes exactly one draw from rng.
template <typename Scalar>
int measure_collapse(PureState<Scalar> &state, int q, Rng &rng) {
    const Scalar p1 = probability_one(state, q);
    const Scalar p0 = Scalar(1) - p1;
    const int outcome = detail::uniform01(rng) < p0 ? 0 : 1;
    const Scalar scale = Scalar(1) / std::sqrt(outcome == 0 ? p0 : p1);
    const std::uint64_t mask = std::uint64_t{1} << q;
    auto &amps = state.mutable_amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const bool bit = (static_cast<std::uint64_t>(i) & mask) != 0;
        amps[i] = (static_cast<int>(bit) == outcome) ? amps[i] * scale
                                                      : std::complex<Scalar>(0);
    }
    return outcome;
}

template <typename Scalar> struct MeasurementResult {
    int outcome;
    PureState<Scalar> post;
};

/// Measures qubit q and removes it; higher qubits shift down by one.
template <typename Scalar>
MeasurementResult<Scalar> measure_destructive(const PureState<Scalar> &state,
                                              int q, Rng &rng) {
    if (state.num_qubits() < 1) {
        throw ParameterError("cannot measure an empty register");
    }
    PureState<Scalar> collapsed = state;
    const int outcome = measure_collapse(collapsed, q, rng);
    Amplitudes<Scalar> reduced(collapsed.dim() / 2);
    const std::uint64_t set = static_cast<std::uint64_t>(outcome) << q;
    for (Eigen::Index j = 0; j < reduced.size(); ++j) {
        const auto src =
            detail::insert_zero_bit(static_cast<std::uint64_t>(j), q) | set;
        reduced[j] = collapsed[static_cast<Eigen::Index>(src)];
    }
    const Scalar norm = reduced.norm();
    reduced /= norm;
    return {outcome, PureState<Scalar>::from_amplitudes(std::move(reduced))};
}

/// <psi| X^x_mask Z^z_mask |psi>, real part (the operator is Hermitian when
/// the masks are disjoint).
template <typename Scalar>
Scalar pauli_expectation(const PureState<Scalar> &state, std::uint64_t x_mask,
                         std::uint64_t z_mask) {
    std::complex<Scalar> acc(0);
    for (Eigen::Index i = 0; i < state.dim(); ++i) {
        const auto ui = static_cast<std::uint64_t>(i);
        const Scalar sign = (std::popcount(ui & z_mask) & 1) ? Scalar(-1) : Scalar(1);
        acc += sign * std::conj(state[static_cast<Eigen::Index>(ui ^ x_mask)]) *
               state[i];
    }
    return acc.real();
}

} // namespace kbudget
