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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "kbudget/gate.hpp"
#include "kbudget/statevec.hpp"

namespace kbudget {

/// Charged interactions, counted in CNOT-equivalents.
using Budget = std::int64_t;

/// Stands for K = infinity; larger than the total cost of any circuit that
/// fits in memory, small enough that usage + cost never overflows.
inline constexpr Budget kUnlimitedBudget = Budget{1} << 60;

enum class BudgetPolicy {
    /// A gate is suppressed when either qubit lacks room for its cost.
    EitherExhausted,
    /// A gate is suppressed only when both qubits are at the cap; usage
    /// saturates at the cap.
    BothExhausted,
};

enum class Decision { Applied, Suppressed };

std::string_view policy_name(BudgetPolicy policy);
BudgetPolicy policy_from_name(std::string_view name);

/// Cost of each charged gate kind. Single-qubit gates and measurements are
/// free and have no entry.
struct ChargeSchedule {
    Budget cnot = 1;
    Budget cz = 1;
    Budget partial_swap = 3;

    Budget cost(GateKind kind) const;
};

/// The admission rule as a pure function of the two local registers.
Decision decide(Budget usage1, Budget usage2, Budget cap, BudgetPolicy policy,
                Budget cost);

/// Per-qubit interaction registers k_i with cap K.
class InteractionLedger {
  public:
    InteractionLedger(int num_qubits, Budget cap,
                      BudgetPolicy policy = BudgetPolicy::EitherExhausted,
                      bool allow_reset = false);

    /// Applies the admission rule and, if admitted, charges both qubits.
    Decision try_interact(int q1, int q2, Budget cost);

    Budget remaining(int q) const;
    Budget usage(int q) const;
    std::span<const Budget> usages() const { return usage_; }
    Budget max_usage() const;

    /// Sets usage[q] back to zero. Throws UnsupportedFeatureError unless the
    /// ledger was created with allow_reset.
    void reset_register(int q);

    int num_qubits() const { return static_cast<int>(usage_.size()); }
    Budget cap() const { return cap_; }
    BudgetPolicy policy() const { return policy_; }
    bool reset_enabled() const { return allow_reset_; }

  private:
    void check(int q) const;

    Budget cap_;
    BudgetPolicy policy_;
    bool allow_reset_;
    std::vector<Budget> usage_;
};

/// One suppressed two-qubit gate.
struct SuppressionRecord {
    std::size_t gate_index = 0;
    GateKind kind = GateKind::CNOT;
    std::array<int, 2> qubits{0, 0};
    std::array<Budget, 2> usage_before{0, 0};

    friend bool operator==(const SuppressionRecord &,
                           const SuppressionRecord &) = default;
};

nlohmann::json to_json(const SuppressionRecord &record);
/// One JSON object per line, newline-terminated.
std::string to_json_lines(std::span<const SuppressionRecord> records);

/// JSON value for a cap: the integer, or "unlimited" for the sentinel.
nlohmann::json budget_to_json(Budget cap);

/// Simulates the circuit in ordinary quantum theory on qubits extended with
/// (K+1)-level registers, each charged gate acting as the register-controlled
/// operation. Returns the qubit part after checking it factorizes from the
/// registers. Measurement gates are not supported.
PureState<double> register_oracle_run(const Circuit &circuit, Budget cap,
                                      BudgetPolicy policy,
                                      const ChargeSchedule &schedule = {},
                                      int qubit_cap = kDefaultQubitCap);

} // namespace kbudget
