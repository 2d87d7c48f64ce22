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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kbudget/budget.hpp"
#include "kbudget/circuit.hpp"
#include "kbudget/statevec.hpp"

namespace kbudget {

// ---------------------------------------------------------------------------
// Collision-model thermalization

/// Qubit state [[1 - d0, conj(k0)], [k0, d0]].
struct InitialQubitParams {
    double d0 = 1.0;
    std::complex<double> k0{0.0, 0.0};

    /// Throws ParameterError unless the matrix is a valid density matrix.
    MixedState<double> density() const;
};

/// p|0><0| + (1-p)|1><1|.
MixedState<double> bath_state(double p);

struct ThermalizationReport {
    double p = 0.5;
    double phi = 0.0;
    double cos_phi = 1.0;
    int m_max = 0;
    Budget cap = kUnlimitedBudget;
    BudgetPolicy policy = BudgetPolicy::EitherExhausted;
    double bound_tol = 1e-9;
    /// D_m for m = 0..m_max (half trace norm to the bath state).
    std::vector<double> distances;
    /// cos(phi)^m for m = 0..m_max.
    std::vector<double> bound;
    Budget system_budget_spent = 0;
    int collisions_applied = 0;
    /// Collision indices m with D_m > bound_m + bound_tol.
    std::vector<int> violations;
    /// D_m non-increasing within 1e-12. Observed, not required.
    bool monotone = true;

    bool pass() const { return violations.empty(); }
};

/// A system qubit meets m_max fresh bath qubits in turn. Each bath qubit is
/// prepared with bath_pair_prep(p) (partner traced out) and then interacts
/// with the system through a partial swap of angle phi. The system pays 3 per
/// collision, each bath qubit 1 + 3. Once a collision is suppressed the
/// system state is left untouched.
ThermalizationReport
thermalize(const InitialQubitParams &init, double p, double phi, int m_max,
           Budget cap, BudgetPolicy policy = BudgetPolicy::EitherExhausted,
           double bound_tol = 1e-9);

nlohmann::json to_json(const ThermalizationReport &report);
/// Header "m,D_m,bound_m", one row per collision count.
std::string to_csv(const ThermalizationReport &report);

/// CNOT budget of the system qubit for thermalization to precision epsilon:
/// 3 * ceil(ln epsilon / ln cos_phi). cos_phi = 0 needs one full swap (3).
Budget k_thermal_cos(double epsilon, double cos_phi);
Budget k_thermal(double epsilon, double phi);
/// 3 ln 10 / |ln cos_phi|: extra budget per decimal digit of precision.
double k_thermal_per_digit(double cos_phi);

// ---------------------------------------------------------------------------
// Reversibility

struct ReversibilityReport {
    Budget cap = 0;
    bool reversible = false;
    double fidelity = 0.0;
    /// Largest per-qubit usage after the forward pass.
    Budget max_usage = 0;
    std::size_t forward_suppressions = 0;
    std::size_t reverse_suppressions = 0;

    bool within_half_budget() const { return max_usage <= cap / 2; }
    /// max_usage <= floor(K/2) implies reversible.
    bool implication_holds() const { return !within_half_budget() || reversible; }
};

/// Runs C then dagger(C) under one shared ledger and compares with |0...0>.
ReversibilityReport reversibility_check(const Circuit &circuit, Budget cap,
                                        BudgetPolicy policy,
                                        double tol = 1e-9);
nlohmann::json to_json(const ReversibilityReport &report);

struct ReversibilitySuiteReport {
    int trials = 0;
    /// Trials with forward max usage <= floor(K/2).
    int premise_count = 0;
    /// Premise held but the reversal failed.
    int counterexamples = 0;
    /// Premise failed but the reversal still succeeded (converse direction).
    int reversible_beyond_half = 0;
    int irreversible = 0;
    std::uint64_t seed = 0;

    bool pass() const { return counterexamples == 0; }
};

/// Random measurement-free circuits on 1..4 qubits. K is drawn from 0..8
/// unless fixed; the policy alternates unless fixed.
ReversibilitySuiteReport
reversibility_suite(int trials, std::uint64_t seed,
                    std::optional<Budget> fixed_cap = std::nullopt,
                    std::optional<BudgetPolicy> fixed_policy = std::nullopt);
nlohmann::json to_json(const ReversibilitySuiteReport &report);

// ---------------------------------------------------------------------------
// Cluster states

struct StabilizerReport {
    Budget cap = 0;
    /// <X_a prod_{b in N(a)} Z_b> per vertex a.
    std::vector<double> expectations;
    std::vector<int> failing;
    std::vector<SuppressionRecord> suppressions;

    bool all_pass() const { return failing.empty(); }
};

StabilizerReport
cluster_stabilizer_check(const ClusterPatch &patch, Budget cap,
                         BudgetPolicy policy = BudgetPolicy::EitherExhausted,
                         double tol = kDefaultTolerance);
nlohmann::json to_json(const StabilizerReport &report);

// ---------------------------------------------------------------------------
// Ledger semantics vs. the register-extension oracle

struct OracleSuiteReport {
    int trials = 0;
    int num_qubits = 0;
    Budget cap = 0;
    BudgetPolicy policy = BudgetPolicy::EitherExhausted;
    std::uint64_t seed = 0;
    /// Largest amplitude-wise difference between the two final states.
    double max_deviation = 0.0;
    std::size_t total_suppressions = 0;
    double tol = kDefaultTolerance;

    bool pass() const { return max_deviation <= tol; }
};

/// Random circuits with up to 12 gates.
OracleSuiteReport oracle_equivalence_suite(int trials, int num_qubits,
                                           Budget cap, BudgetPolicy policy,
                                           std::uint64_t seed,
                                           double tol = kDefaultTolerance);
nlohmann::json to_json(const OracleSuiteReport &report);

} // namespace kbudget
