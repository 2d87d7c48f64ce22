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

#include "kbudget/experiments.hpp"

#include <cmath>
#include <cstdio>

#include "kbudget/random.hpp"

namespace kbudget {

MixedState<double> InitialQubitParams::density() const {
    if (!(d0 >= 0.0 && d0 <= 1.0)) {
        throw ParameterError("d0 must lie in [0, 1]");
    }
    if (std::abs(k0) > 0.5) {
        throw ParameterError("|k0| must not exceed 1/2");
    }
    DensityMatrix<double> m(2, 2);
    m << 1.0 - d0, std::conj(k0), k0, d0;
    return MixedState<double>::from_matrix(std::move(m));
}

MixedState<double> bath_state(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("probability must lie in [0, 1]");
    }
    DensityMatrix<double> m = DensityMatrix<double>::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    return MixedState<double>::from_matrix(std::move(m));
}

namespace {

// Purification of a qubit state on (system = qubit 0, ancilla = qubit 1),
// embedded in a register of `num_qubits` qubits whose remaining qubits are |0>.
PureState<double> purify(const MixedState<double> &rho, int num_qubits) {
    Eigen::SelfAdjointEigenSolver<DensityMatrix<double>> es(rho.matrix());
    Amplitudes<double> amps = Amplitudes<double>::Zero(Eigen::Index{1} << num_qubits);
    for (Eigen::Index i = 0; i < 2; ++i) {
        const double weight = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
        for (Eigen::Index s = 0; s < 2; ++s) {
            amps[s + 2 * i] = weight * es.eigenvectors()(s, i);
        }
    }
    amps /= amps.norm();
    return PureState<double>::from_amplitudes(std::move(amps));
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

ThermalizationReport thermalize(const InitialQubitParams &init, double p,
                                double phi, int m_max, Budget cap,
                                BudgetPolicy policy, double bound_tol) {
    if (m_max < 0) {
        throw ParameterError("collision count must be non-negative");
    }
    const double c = std::cos(phi);
    if (!std::isfinite(phi) || c < 0.0) {
        throw ParameterError("cos(phi) must lie in [0, 1]");
    }
    const MixedState<double> sigma = bath_state(p);
    MixedState<double> rho = init.density();

    ThermalizationReport report;
    report.p = p;
    report.phi = phi;
    report.cos_phi = c;
    report.m_max = m_max;
    report.cap = cap;
    report.policy = policy;
    report.bound_tol = bound_tol;

    // Ledger slots: 0 = system, 1 + 2j = partner of bath qubit j, 2 + 2j = bath
    // qubit j. The purifying ancilla never interacts and has no slot.
    InteractionLedger ledger(1 + 2 * m_max, cap, policy);
    const ChargeSchedule schedule;
    const Circuit prep = bath_pair_prep(p);
    const Unitary1Q<double> prep_rotation = prep.gates[0].unitary_1q();
    const Unitary2Q<double> pswap = partial_swap_matrix(phi);

    auto record = [&](int m) {
        const double d = trace_distance(rho, sigma);
        const double b = std::pow(c, m);
        if (!report.distances.empty() && d > report.distances.back() + 1e-12) {
            report.monotone = false;
        }
        report.distances.push_back(d);
        report.bound.push_back(b);
        if (d > b + bound_tol) {
            report.violations.push_back(m);
        }
    };

    record(0);
    for (int m = 1; m <= m_max; ++m) {
        const int partner = 2 * m - 1;
        const int bath = 2 * m;
        // Local register: 0 system, 1 ancilla, 2 partner, 3 bath.
        PureState<double> psi = purify(rho, 4);
        auto &amps = psi.mutable_amplitudes();
        detail::apply_1q_kernel<double>(amps, prep_rotation, 2);
        if (ledger.try_interact(partner, bath, schedule.cnot) ==
            Decision::Applied) {
            detail::apply_2q_kernel<double>(amps, cnot_matrix(), 2, 3);
        }
        if (ledger.try_interact(0, bath, schedule.partial_swap) ==
            Decision::Applied) {
            detail::apply_2q_kernel<double>(amps, pswap, 0, 3);
            rho = partial_trace(psi, {0});
            ++report.collisions_applied;
        }
        // A suppressed swap never touches the system, so rho stays as is.
        record(m);
    }
    report.system_budget_spent = ledger.usage(0);
    return report;
}

nlohmann::json to_json(const ThermalizationReport &r) {
    return {
        {"schema", "1"},
        {"experiment", "thermalize"},
        {"p", r.p},
        {"phi", r.phi},
        {"cos_phi", r.cos_phi},
        {"m_max", r.m_max},
        {"k", budget_to_json(r.cap)},
        {"policy", policy_name(r.policy)},
        {"bound_tol", r.bound_tol},
        {"distances", r.distances},
        {"bound", r.bound},
        {"system_budget_spent", r.system_budget_spent},
        {"collisions_applied", r.collisions_applied},
        {"violations", r.violations},
        {"monotone", r.monotone},
        {"pass", r.pass()},
    };
}

std::string to_csv(const ThermalizationReport &r) {
    std::string out = "m,D_m,bound_m\n";
    for (std::size_t m = 0; m < r.distances.size(); ++m) {
        out += std::to_string(m) + "," + format_double(r.distances[m]) + "," +
               format_double(r.bound[m]) + "\n";
    }
    return out;
}

Budget k_thermal_cos(double epsilon, double cos_phi) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ParameterError("precision epsilon must lie in (0, 1)");
    }
    if (!(cos_phi >= 0.0 && cos_phi < 1.0)) {
        throw ParameterError("cos(phi) must lie in [0, 1); cos(phi) = 1 never "
                             "thermalizes");
    }
    if (cos_phi == 0.0) {
        return 3;
    }
    const double collisions = std::log(epsilon) / std::log(cos_phi);
    // Shave rounding noise so exact integer ratios are not bumped up by one.
    const double m = std::ceil(collisions * (1.0 - 4 * 1e-15));
    return 3 * std::max<Budget>(1, static_cast<Budget>(m));
}

Budget k_thermal(double epsilon, double phi) {
    double c = std::cos(phi);
    if (std::abs(c) < 1e-15) {
        c = 0.0;
    }
    return k_thermal_cos(epsilon, c);
}

double k_thermal_per_digit(double cos_phi) {
    if (!(cos_phi > 0.0 && cos_phi < 1.0)) {
        throw ParameterError("cos(phi) must lie in (0, 1)");
    }
    return 3.0 * std::log(10.0) / std::abs(std::log(cos_phi));
}

ReversibilityReport reversibility_check(const Circuit &circuit, Budget cap,
                                        BudgetPolicy policy, double tol) {
    circuit.validate();
    const Circuit inverse = dagger(circuit);
    RunResult log{PureState<double>(circuit.num_qubits),
                  InteractionLedger(circuit.num_qubits, cap, policy),
                  {},
                  {},
                  {}};
    Rng rng(0); // no measurements, never drawn
    execute(circuit, log.state, log.ledger, rng, log);
    ReversibilityReport report;
    report.cap = cap;
    report.max_usage = log.ledger.max_usage();
    report.forward_suppressions = log.suppressions.size();
    execute(inverse, log.state, log.ledger, rng, log, {},
            circuit.gates.size());
    report.reverse_suppressions =
        log.suppressions.size() - report.forward_suppressions;
    report.fidelity = fidelity(log.state, zero_state(circuit.num_qubits));
    report.reversible = report.fidelity >= 1.0 - tol;
    return report;
}

nlohmann::json to_json(const ReversibilityReport &r) {
    return {
        {"schema", "1"},
        {"experiment", "revcheck"},
        {"k", budget_to_json(r.cap)},
        {"reversible", r.reversible},
        {"fidelity", r.fidelity},
        {"max_usage", r.max_usage},
        {"within_half_budget", r.within_half_budget()},
        {"forward_suppressions", r.forward_suppressions},
        {"reverse_suppressions", r.reverse_suppressions},
        {"implication_holds", r.implication_holds()},
        {"pass", r.implication_holds()},
    };
}

ReversibilitySuiteReport
reversibility_suite(int trials, std::uint64_t seed,
                    std::optional<Budget> fixed_cap,
                    std::optional<BudgetPolicy> fixed_policy) {
    ReversibilitySuiteReport report;
    report.trials = trials;
    report.seed = seed;
    RandomCircuitOptions options;
    options.max_gates = 10;
    options.two_qubit_fraction = 0.4;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "reversibility", static_cast<std::uint64_t>(t)));
        const int n = 1 + static_cast<int>(rng() % 4);
        const Budget cap = fixed_cap ? *fixed_cap : static_cast<Budget>(rng() % 9);
        const BudgetPolicy policy =
            fixed_policy ? *fixed_policy
                         : (t % 2 == 0 ? BudgetPolicy::EitherExhausted
                                       : BudgetPolicy::BothExhausted);
        const Circuit c = random_circuit(n, rng, options);
        const ReversibilityReport r = reversibility_check(c, cap, policy);
        if (r.within_half_budget()) {
            ++report.premise_count;
            report.counterexamples += r.reversible ? 0 : 1;
        } else if (r.reversible) {
            ++report.reversible_beyond_half;
        }
        report.irreversible += r.reversible ? 0 : 1;
    }
    return report;
}

nlohmann::json to_json(const ReversibilitySuiteReport &r) {
    return {
        {"suite", "reversibility"},
        {"trials", r.trials},
        {"seed", r.seed},
        {"premise_count", r.premise_count},
        {"counterexamples", r.counterexamples},
        {"reversible_beyond_half", r.reversible_beyond_half},
        {"irreversible", r.irreversible},
        {"pass", r.pass()},
    };
}

StabilizerReport cluster_stabilizer_check(const ClusterPatch &patch, Budget cap,
                                          BudgetPolicy policy, double tol) {
    const RunResult result = run(patch.circuit, cap, policy, 0);
    StabilizerReport report;
    report.cap = cap;
    report.suppressions = result.suppressions;
    const auto adj = patch.neighbours();
    for (std::size_t a = 0; a < adj.size(); ++a) {
        std::uint64_t z_mask = 0;
        for (int b : adj[a]) {
            z_mask |= std::uint64_t{1} << b;
        }
        const double e =
            pauli_expectation(result.state, std::uint64_t{1} << a, z_mask);
        report.expectations.push_back(e);
        if (std::abs(e - 1.0) > tol) {
            report.failing.push_back(static_cast<int>(a));
        }
    }
    return report;
}

nlohmann::json to_json(const StabilizerReport &r) {
    auto suppressed = nlohmann::json::array();
    for (const auto &s : r.suppressions) {
        suppressed.push_back(to_json(s));
    }
    return {
        {"k", budget_to_json(r.cap)},
        {"expectations", r.expectations},
        {"failing", r.failing},
        {"suppressions", std::move(suppressed)},
        {"pass", r.all_pass()},
    };
}

OracleSuiteReport oracle_equivalence_suite(int trials, int num_qubits,
                                           Budget cap, BudgetPolicy policy,
                                           std::uint64_t seed, double tol) {
    OracleSuiteReport report;
    report.trials = trials;
    report.num_qubits = num_qubits;
    report.cap = cap;
    report.policy = policy;
    report.seed = seed;
    report.tol = tol;
    RandomCircuitOptions options;
    options.max_gates = 12;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "oracle", static_cast<std::uint64_t>(t)));
        const Circuit c = random_circuit(num_qubits, rng, options);
        const RunResult ledger_run = run(c, cap, policy, 0);
        const PureState<double> oracle = register_oracle_run(c, cap, policy);
        const double dev =
            (ledger_run.state.amplitudes() - oracle.amplitudes()).cwiseAbs().maxCoeff();
        report.max_deviation = std::max(report.max_deviation, dev);
        report.total_suppressions += ledger_run.suppressions.size();
    }
    return report;
}

nlohmann::json to_json(const OracleSuiteReport &r) {
    return {
        {"suite", "oracle"},
        {"trials", r.trials},
        {"num_qubits", r.num_qubits},
        {"k", budget_to_json(r.cap)},
        {"policy", policy_name(r.policy)},
        {"seed", r.seed},
        {"max_deviation", r.max_deviation},
        {"total_suppressions", r.total_suppressions},
        {"tol", r.tol},
        {"pass", r.pass()},
    };
}

} // namespace kbudget
