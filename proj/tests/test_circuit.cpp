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

#include <gtest/gtest.h>

#include <set>

#include "kbudget/circuit.hpp"
#include "kbudget/circuit_json.hpp"
#include "kbudget/errors.hpp"
#include "kbudget/random.hpp"
#include "oracles.hpp"

namespace kbudget {
namespace {

using testing::Cd;

Eigen::VectorXcd amps(const RunResult &r) { return r.state.amplitudes(); }

TEST(GateMatrices, AreUnitary) {
    for (double a : {-2.0, 0.0, 0.3, 3.1}) {
        EXPECT_TRUE(is_unitary(rx_matrix(a)));
        EXPECT_TRUE(is_unitary(ry_matrix(a)));
        EXPECT_TRUE(is_unitary(rz_matrix(a)));
        EXPECT_TRUE(is_unitary(partial_swap_matrix(a)));
    }
    EXPECT_TRUE(is_unitary(cnot_matrix()));
    EXPECT_TRUE(is_unitary(cz_matrix()));
    EXPECT_TRUE(is_unitary(swap_matrix()));
    EXPECT_TRUE(is_unitary(hadamard_matrix()));
}

TEST(GateMatrices, PartialSwapLimits) {
    EXPECT_LT((partial_swap_matrix(0.0) - Unitary2Q<double>::Identity()).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_LT((partial_swap_matrix(M_PI / 2) - Cd(0, 1) * swap_matrix()).cwiseAbs().maxCoeff(),
              1e-15);
}

TEST(GateMatrices, RyClosedForm) {
    const double t = 0.7;
    const auto m = ry_matrix(t);
    EXPECT_NEAR(m(0, 0).real(), std::cos(t / 2), 1e-15);
    EXPECT_NEAR(m(1, 0).real(), std::sin(t / 2), 1e-15);
    EXPECT_NEAR(m(0, 1).real(), -std::sin(t / 2), 1e-15);
}

TEST(GateKinds, NamesRoundTrip) {
    for (GateKind k : {GateKind::Rx, GateKind::Ry, GateKind::Rz, GateKind::U1Q, GateKind::CNOT,
                       GateKind::CZ, GateKind::PartialSwap, GateKind::MeasureZ}) {
        EXPECT_EQ(gate_kind_from_name(gate_kind_name(k)), k);
    }
    EXPECT_FALSE(gate_kind_from_name("toffoli").has_value());
}

TEST(CircuitValidate, RejectsMalformedGates) {
    EXPECT_THROW(Circuit(2).add(Gate::cnot(0, 2)).validate(), InvalidGateError);
    EXPECT_THROW(Circuit(2).add(Gate::cz(1, 1)).validate(), InvalidGateError);
    EXPECT_THROW(Circuit(1).add(Gate::rx(0, std::nan(""))).validate(), InvalidGateError);
    Unitary1Q<double> bad = Unitary1Q<double>::Zero();
    EXPECT_THROW(Circuit(1).add(Gate::u1q(0, bad)).validate(), InvalidGateError);
    EXPECT_NO_THROW(Circuit(2).add(Gate::partial_swap(1, 0, 0.2)).validate());
}

TEST(Run, GhzThreeUnderTwo) {
    const RunResult r = run(ghz_chain(3), 2, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(testing::overlap_sq(amps(r), testing::ghz_vector(3)), 1.0, 1e-12);
    EXPECT_EQ(std::vector<Budget>(r.ledger.usages().begin(), r.ledger.usages().end()),
              (std::vector<Budget>{1, 2, 1}));
    EXPECT_TRUE(r.suppressions.empty());
}

TEST(Run, GhzThreeUnderZero) {
    for (BudgetPolicy p : {BudgetPolicy::EitherExhausted, BudgetPolicy::BothExhausted}) {
        const RunResult r = run(ghz_chain(3), 0, p, 0);
        ASSERT_EQ(r.suppressions.size(), 2u);
        EXPECT_EQ(r.suppressions[0].gate_index, 1u);
        EXPECT_EQ(r.suppressions[1].gate_index, 2u);
        EXPECT_NEAR(r.state[0].real(), 1 / std::sqrt(2.0), 1e-15);
        EXPECT_NEAR(r.state[1].real(), 1 / std::sqrt(2.0), 1e-15);
        EXPECT_EQ(r.ledger.max_usage(), 0);
    }
}

TEST(Run, UnlimitedMatchesUnrestricted) {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = random_circuit(4, rng, {.max_gates = 30});
        const RunResult a = run(c, kUnlimitedBudget, BudgetPolicy::EitherExhausted, 0);
        const RunResult b = run_unrestricted(c);
        EXPECT_LT((amps(a) - amps(b)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_TRUE(a.suppressions.empty());
    }
}

TEST(Run, SlackBudgetIsInert) {
    Rng rng(103);
    const ChargeSchedule schedule;
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = random_circuit(3, rng, {.max_gates = 20});
        Budget total = 0;
        for (const Gate &g : c.gates) {
            if (g.is_two_qubit()) {
                total += schedule.cost(g.kind);
            }
        }
        const RunResult a = run(c, total, BudgetPolicy::EitherExhausted, 0);
        const RunResult b = run_unrestricted(c);
        EXPECT_EQ(amps(a), amps(b));
    }
}

TEST(Run, MatchesDenseOracle) {
    Rng rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        const Circuit c = random_circuit(3, rng, {.max_gates = 15});
        const RunResult r = run(c, 2, BudgetPolicy::EitherExhausted, 0);
        std::vector<bool> applied;
        std::size_t gate = 0;
        std::set<std::size_t> suppressed;
        for (const auto &s : r.suppressions) {
            suppressed.insert(s.gate_index);
        }
        for (const Gate &g : c.gates) {
            if (g.is_two_qubit()) {
                applied.push_back(!suppressed.count(gate));
            }
            ++gate;
        }
        EXPECT_LT((amps(r) - testing::dense_run(c, applied)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Run, MeasurementCollapsesInPlace) {
    Circuit c(2);
    c.add(Gate::hadamard(0)).add(Gate::cnot(0, 1)).add(Gate::measure_z(0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RunResult r = run(c, 1, BudgetPolicy::EitherExhausted, seed);
        ASSERT_EQ(r.measurements.size(), 1u);
        const int outcome = r.measurements[0].outcome;
        EXPECT_EQ(r.state.num_qubits(), 2);
        EXPECT_NEAR(std::norm(r.state[outcome ? 3 : 0]), 1.0, 1e-12);
    }
    const RunResult a = run(c, 1, BudgetPolicy::EitherExhausted, 5);
    const RunResult b = run(c, 1, BudgetPolicy::EitherExhausted, 5);
    EXPECT_EQ(a.measurements[0].outcome, b.measurements[0].outcome);
}

TEST(GhzChain, Shapes) {
    const Circuit one = ghz_chain(1);
    EXPECT_EQ(one.gates.size(), 1u);
    EXPECT_EQ(one.two_qubit_count(), 0u);
    const RunResult plus = run(one, 2, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(plus.state[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(plus.state[1].real(), 1 / std::sqrt(2.0), 1e-15);

    const RunResult bell = run(ghz_chain(2), 1, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(testing::overlap_sq(amps(bell), testing::ghz_vector(2)), 1.0, 1e-12);
    EXPECT_EQ(bell.ledger.usage(0), 1);
    EXPECT_EQ(bell.ledger.usage(1), 1);
    EXPECT_THROW(ghz_chain(0), ParameterError);
}

TEST(GhzChain, UsagePattern) {
    for (int n = 3; n <= 12; ++n) {
        const RunResult r = run(ghz_chain(n), 2, BudgetPolicy::EitherExhausted, 0);
        std::vector<Budget> expect(static_cast<std::size_t>(n), 2);
        expect.front() = expect.back() = 1;
        EXPECT_EQ(std::vector<Budget>(r.ledger.usages().begin(), r.ledger.usages().end()), expect);
        EXPECT_NEAR(testing::overlap_sq(amps(r), testing::ghz_vector(n)), 1.0, 1e-10);
    }
}

TEST(BathPairPrep, Cases) {
    const RunResult one = run(bath_pair_prep(1.0), 1, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(std::norm(one.state[0]), 1.0, 1e-15);
    const RunResult half = run(bath_pair_prep(0.5), 1, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(testing::overlap_sq(amps(half), testing::ghz_vector(2)), 1.0, 1e-12);
    const RunResult p3 = run(bath_pair_prep(0.3), 1, BudgetPolicy::EitherExhausted, 0);
    const auto rho = partial_trace(p3.state, {1}).matrix();
    EXPECT_NEAR(rho(0, 0).real(), 0.3, 1e-12);
    EXPECT_NEAR(rho(1, 1).real(), 0.7, 1e-12);
    EXPECT_EQ(p3.ledger.usage(0), 1);
    EXPECT_EQ(p3.ledger.usage(1), 1);
    EXPECT_THROW(bath_pair_prep(1.5), ParameterError);
}

TEST(HexCluster, SingleHexagonIsSixCycle) {
    const ClusterPatch patch = hex_cluster(1, 1);
    EXPECT_EQ(patch.circuit.num_qubits, 6);
    EXPECT_EQ(patch.edges.size(), 6u);
    for (const auto &nb : patch.neighbours()) {
        EXPECT_EQ(nb.size(), 2u);
    }
    const RunResult r = run(patch.circuit, 3, BudgetPolicy::EitherExhausted, 0);
    for (Budget u : r.ledger.usages()) {
        EXPECT_EQ(u, 2);
    }
}

TEST(HexCluster, TwoByTwoHasDegreeThree) {
    const ClusterPatch patch = hex_cluster(2, 2);
    EXPECT_EQ(patch.max_degree(), 3);
    const int n = patch.circuit.num_qubits;
    const int e = static_cast<int>(patch.edges.size());
    // Four hexagonal faces plus the outer face: V - E + F = 2.
    EXPECT_EQ(n - e + 4 + 1, 2);
    const RunResult r = run(patch.circuit, 3, BudgetPolicy::EitherExhausted, 0);
    EXPECT_TRUE(r.suppressions.empty());
}

TEST(HexCluster, DegreeAtMostThree) {
    for (int rows = 1; rows <= 4; ++rows) {
        for (int cols = 1; cols <= 4; ++cols) {
            const ClusterPatch patch = hex_cluster(rows, cols, 64);
            EXPECT_LE(patch.max_degree(), 3) << rows << "x" << cols;
            std::set<std::pair<int, int>> unique;
            for (auto [a, b] : patch.edges) {
                EXPECT_NE(a, b);
                unique.insert({std::min(a, b), std::max(a, b)});
            }
            EXPECT_EQ(unique.size(), patch.edges.size());
        }
    }
    EXPECT_THROW(hex_cluster(0, 1), ParameterError);
}

TEST(Dagger, Involution) {
    Rng rng(109);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = random_circuit(3, rng);
        EXPECT_EQ(dagger(dagger(c)), c);
    }
}

TEST(Dagger, HadamardIsSelfInverse) {
    Circuit c(1);
    c.add(Gate::hadamard(0));
    const Circuit d = dagger(c);
    ASSERT_EQ(d.gates.size(), 1u);
    EXPECT_LT((d.gates[0].matrix - hadamard_matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Dagger, MeasurementNotInvertible) {
    Circuit c(1);
    c.add(Gate::measure_z(0));
    EXPECT_THROW(dagger(c), NotInvertibleError);
}

TEST(Dagger, RandomCircuitsReturnToZero) {
    Rng rng(113);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const Circuit c = random_circuit(n, rng, {.max_gates = 20});
        const RunResult r = run_unrestricted(concat(c, dagger(c)));
        EXPECT_NEAR(std::abs(r.state[0]), 1.0, 1e-10);
    }
}

TEST(Dagger, GhzUnderFourReverses) {
    const Circuit c = ghz_chain(3);
    const RunResult r = run(concat(c, dagger(c)), 4, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(std::norm(r.state[0]), 1.0, 1e-12);
    EXPECT_THROW(concat(Circuit(1), Circuit(2)), DimensionMismatchError);
}

TEST(Schmidt, ProductTargetNeedsNoCnot) {
    const SchmidtPrep prep = schmidt_2q_prep(zero_state(2));
    EXPECT_FALSE(prep.uses_cnot);
    EXPECT_EQ(prep.circuit.two_qubit_count(), 0u);
    const RunResult r = run(prep.circuit, 0, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(fidelity(r.state, zero_state(2)), 1.0, 1e-12);
}

TEST(Schmidt, BellTarget) {
    const auto bell = PureState<double>::from_amplitudes(testing::ghz_vector(2));
    const SchmidtPrep prep = schmidt_2q_prep(bell);
    EXPECT_TRUE(prep.uses_cnot);
    EXPECT_NEAR(prep.theta, M_PI / 2, 1e-12);
    EXPECT_NEAR(prep.coefficients[0], prep.coefficients[1], 1e-12);
    const RunResult r = run(prep.circuit, 1, BudgetPolicy::EitherExhausted, 0);
    EXPECT_NEAR(fidelity(r.state, bell), 1.0, 1e-12);
}

TEST(Schmidt, HaarTargets) {
    Rng rng(derive_seed(kDefaultSeed, "schmidt-test", 0));
    for (int trial = 0; trial < 100; ++trial) {
        const auto target = haar_state(2, rng);
        const SchmidtPrep prep = schmidt_2q_prep(target);
        EXPECT_LE(prep.circuit.two_qubit_count(), 1u);
        const RunResult r = run(prep.circuit, 1, BudgetPolicy::EitherExhausted, 0);
        EXPECT_TRUE(r.suppressions.empty());
        EXPECT_GE(fidelity(r.state, target), 1 - 1e-9);
        EXPECT_NEAR(prep.coefficients[0] * prep.coefficients[0] +
                        prep.coefficients[1] * prep.coefficients[1],
                    1.0, 1e-12);
        EXPECT_NEAR(prep.theta, 2 * std::acos(prep.coefficients[0]), 1e-12);
    }
    EXPECT_THROW(schmidt_2q_prep(zero_state(3)), DimensionMismatchError);
}

TEST(CircuitJson, RoundTripRandomCircuits) {
    Rng rng(127);
    for (int trial = 0; trial < 100; ++trial) {
        RandomCircuitOptions opts;
        opts.allow_measurement = trial % 2 == 0;
        Circuit c = random_circuit(1 + trial % 5, rng, opts);
        if (trial % 3 == 0) {
            c.add(Gate::u1q(0, haar_unitary_1q(rng)));
        }
        const std::string text = serialize_circuit(c);
        const Circuit back = parse_circuit(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(serialize_circuit(back), text);
    }
}

TEST(CircuitJson, SchemaErrors) {
    EXPECT_THROW(parse_circuit("{}"), ParameterError);
    EXPECT_THROW(parse_circuit(R"({"num_qubits": 2, "gates": [{"kind": "toffoli", "qubits": [0]}]})"),
                 ParameterError);
    EXPECT_THROW(parse_circuit(R"({"num_qubits": 2, "gates": [{"kind": "cnot", "qubits": [0]}]})"),
                 ParameterError);
    EXPECT_THROW(parse_circuit(R"({"num_qubits": 2, "gates": [{"kind": "rx", "qubits": [0]}]})"),
                 ParameterError);
    EXPECT_THROW(parse_circuit(R"({"num_qubits": 2, "gates": [{"kind": "cnot", "qubits": [0, 5]}]})"),
                 Error);
    EXPECT_THROW(parse_circuit("not json"), ParameterError);
}

TEST(CircuitJson, ExplicitDocument) {
    const Circuit c = parse_circuit(R"({
      "num_qubits": 2,
      "gates": [
        {"kind": "ry", "qubits": [0], "angle": 1.5707963267948966},
        {"kind": "cnot", "qubits": [0, 1]},
        {"kind": "pswap", "qubits": [1, 0], "angle": 0.25}
      ]})");
    ASSERT_EQ(c.gates.size(), 3u);
    EXPECT_EQ(c.gates[1], Gate::cnot(0, 1));
    EXPECT_EQ(c.gates[2], Gate::partial_swap(1, 0, 0.25));
}

TEST(RandomCircuit, DeterministicAndBounded) {
    Rng a(131), b(131);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit ca = random_circuit(3, a);
        const Circuit cb = random_circuit(3, b);
        EXPECT_EQ(ca, cb);
        EXPECT_LE(ca.gates.size(), 12u);
        EXPECT_NO_THROW(ca.validate());
        EXPECT_FALSE(ca.has_measurement());
    }
    Rng c(137);
    for (int trial = 0; trial < 20; ++trial) {
        EXPECT_EQ(random_circuit(1, c).two_qubit_count(), 0u);
    }
}

} // namespace
} // namespace kbudget
