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

#include "kbudget/budget.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kbudget {

std::string_view policy_name(BudgetPolicy policy) {
    return policy == BudgetPolicy::EitherExhausted ? "either" : "both";
}

BudgetPolicy policy_from_name(std::string_view name) {
    if (name == "either") {
        return BudgetPolicy::EitherExhausted;
    }
    if (name == "both") {
        return BudgetPolicy::BothExhausted;
    }
    throw ParameterError("unknown budget policy '" + std::string(name) +
                         "' (expected either|both)");
}

Budget ChargeSchedule::cost(GateKind kind) const {
    switch (kind) {
    case GateKind::CNOT:
        return cnot;
    case GateKind::CZ:
        return cz;
    case GateKind::PartialSwap:
        return partial_swap;
    default:
        throw InvalidGateError(std::string(gate_kind_name(kind)) +
                               " is not a charged gate");
    }
}

Decision decide(Budget usage1, Budget usage2, Budget cap, BudgetPolicy policy,
                Budget cost) {
    if (policy == BudgetPolicy::EitherExhausted) {
        // Multi-CNOT macros are admitted atomically or not at all.
        return (usage1 + cost <= cap && usage2 + cost <= cap)
                   ? Decision::Applied
                   : Decision::Suppressed;
    }
    return (usage1 >= cap && usage2 >= cap) ? Decision::Suppressed
                                            : Decision::Applied;
}

InteractionLedger::InteractionLedger(int num_qubits, Budget cap,
                                     BudgetPolicy policy, bool allow_reset)
    : cap_(cap), policy_(policy), allow_reset_(allow_reset),
      usage_(static_cast<std::size_t>(std::max(num_qubits, 0)), 0) {
    if (num_qubits < 0) {
        throw ParameterError("negative qubit count");
    }
    if (cap < 0) {
        throw ParameterError("budget cap must be non-negative");
    }
}

void InteractionLedger::check(int q) const {
    detail::check_qubit(q, num_qubits());
}

Decision InteractionLedger::try_interact(int q1, int q2, Budget cost) {
    check(q1);
    check(q2);
    if (q1 == q2) {
        throw InvalidGateError("interaction of a qubit with itself");
    }
    if (cost < 1) {
        throw ParameterError("interaction cost must be at least 1");
    }
    auto &u1 = usage_[static_cast<std::size_t>(q1)];
    auto &u2 = usage_[static_cast<std::size_t>(q2)];
    const Decision d = decide(u1, u2, cap_, policy_, cost);
    if (d == Decision::Applied) {
        u1 = std::min(u1 + cost, cap_);
        u2 = std::min(u2 + cost, cap_);
    }
    return d;
}

Budget InteractionLedger::remaining(int q) const {
    check(q);
    return cap_ - usage_[static_cast<std::size_t>(q)];
}

Budget InteractionLedger::usage(int q) const {
    check(q);
    return usage_[static_cast<std::size_t>(q)];
}

Budget InteractionLedger::max_usage() const {
    Budget m = 0;
    for (Budget u : usage_) {
        m = std::max(m, u);
    }
    return m;
}

void InteractionLedger::reset_register(int q) {
    check(q);
    if (!allow_reset_) {
        throw UnsupportedFeatureError(
            "register reset is disabled for this ledger");
    }
    usage_[static_cast<std::size_t>(q)] = 0;
}

nlohmann::json to_json(const SuppressionRecord &record) {
    return {
        {"gate_index", record.gate_index},
        {"kind", gate_kind_name(record.kind)},
        {"qubits", record.qubits},
        {"usage_before", record.usage_before},
    };
}

std::string to_json_lines(std::span<const SuppressionRecord> records) {
    std::string out;
    for (const auto &r : records) {
        out += to_json(r).dump();
        out += '\n';
    }
    return out;
}

nlohmann::json budget_to_json(Budget cap) {
    if (cap >= kUnlimitedBudget) {
        return "unlimited";
    }
    return cap;
}

// ---------------------------------------------------------------------------
// Register-extension oracle.
//
// The extended state is stored as a 2^n x (K+1)^n matrix: column r holds the
// qubit amplitudes for register configuration r, whose digit i (base K+1) is
// the register of qubit i. The admission rule below is written against the
// register digits directly and does not go through decide().

namespace {

using ExtendedState = DensityMatrix<double>;

struct RegisterLayout {
    int num_qubits;
    Budget levels; // K + 1
    Eigen::Index configs;

    Budget digit(Eigen::Index config, int q) const {
        Eigen::Index c = config;
        for (int i = 0; i < q; ++i) {
            c /= levels;
        }
        return c % levels;
    }

    Eigen::Index with_digit(Eigen::Index config, int q, Budget value) const {
        Eigen::Index place = 1;
        for (int i = 0; i < q; ++i) {
            place *= levels;
        }
        return config + (value - digit(config, q)) * place;
    }
};

// Register transition of one charged gate, or -1 when the gate acts as the
// identity for this configuration.
Eigen::Index shifted_config(const RegisterLayout &layout, Eigen::Index config,
                            int q1, int q2, Budget cost, BudgetPolicy policy) {
    const Budget cap = layout.levels - 1;
    const Budget k1 = layout.digit(config, q1);
    const Budget k2 = layout.digit(config, q2);
    Budget n1 = 0, n2 = 0;
    if (policy == BudgetPolicy::EitherExhausted) {
        if (k1 + cost > cap || k2 + cost > cap) {
            return -1;
        }
        n1 = k1 + cost;
        n2 = k2 + cost;
    } else {
        if (k1 == cap && k2 == cap) {
            return -1;
        }
        n1 = std::min(k1 + cost, cap);
        n2 = std::min(k2 + cost, cap);
    }
    return layout.with_digit(layout.with_digit(config, q1, n1), q2, n2);
}

} // namespace

PureState<double> register_oracle_run(const Circuit &circuit, Budget cap,
                                      BudgetPolicy policy,
                                      const ChargeSchedule &schedule,
                                      int qubit_cap) {
    circuit.validate();
    if (circuit.has_measurement()) {
        throw UnsupportedFeatureError(
            "register oracle does not model measurements");
    }
    const int n = circuit.num_qubits;
    detail::check_capacity(n, qubit_cap);
    if (cap < 0) {
        throw ParameterError("budget cap must be non-negative");
    }
    const double log2_dim =
        n * (1.0 + std::log2(static_cast<double>(cap) + 1.0));
    if (log2_dim > qubit_cap) {
        throw CapacityError("extended register space 2^n (K+1)^n exceeds 2^" +
                            std::to_string(qubit_cap) + " amplitudes");
    }

    RegisterLayout layout{n, cap + 1, 1};
    for (int i = 0; i < n; ++i) {
        layout.configs *= layout.levels;
    }
    const Eigen::Index qdim = Eigen::Index{1} << n;
    ExtendedState psi = ExtendedState::Zero(qdim, layout.configs);
    psi(0, 0) = 1.0; // |0...0> with every register at k = 0

    for (const Gate &g : circuit.gates) {
        if (!g.is_two_qubit()) {
            const Unitary1Q<double> u = g.unitary_1q();
            for (Eigen::Index r = 0; r < layout.configs; ++r) {
                detail::apply_1q_kernel<double>(psi.col(r), u, g.qubits[0]);
            }
            continue;
        }
        const Unitary2Q<double> u = g.unitary_2q();
        const Budget cost = schedule.cost(g.kind);
        ExtendedState next = ExtendedState::Zero(qdim, layout.configs);
        for (Eigen::Index r = 0; r < layout.configs; ++r) {
            if (psi.col(r).squaredNorm() == 0.0) {
                continue;
            }
            const Eigen::Index target =
                shifted_config(layout, r, g.qubits[0], g.qubits[1], cost, policy);
            if (target < 0) {
                next.col(r) += psi.col(r);
            } else {
                Amplitudes<double> column = psi.col(r);
                detail::apply_2q_kernel<double>(column, u, g.qubits[0],
                                                g.qubits[1]);
                next.col(target) += column;
            }
        }
        psi = std::move(next);
    }

    // The register part must be a product factor: psi has rank one.
    Eigen::JacobiSVD<ExtendedState> svd(psi);
    const auto &sv = svd.singularValues();
    const double residual = psi.squaredNorm() - sv[0] * sv[0];
    if (std::abs(psi.squaredNorm() - 1.0) > kDefaultTolerance ||
        residual > kDefaultTolerance) {
        throw std::logic_error("register oracle: registers became entangled "
                               "with the qubits");
    }
    Eigen::Index best = 0;
    psi.colwise().squaredNorm().maxCoeff(&best);
    Amplitudes<double> qubits = psi.col(best);
    qubits /= qubits.norm();
    return PureState<double>::from_amplitudes(std::move(qubits));
}

} // namespace kbudget
